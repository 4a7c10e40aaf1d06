// Learn the transformer table for the length domain and apply the Concat
// transformer to a few argument states.

#include <atlas/transformers.hpp>

#include <iostream>

int main() {
  using namespace atlas;
  const Domain lengths{Template::top(), Template{Kind::LenEq}, Template{Kind::LenNeq}};
  const auto table = learn_transformers(lengths, LearnConfig{});
  for (const auto* t : table.entries()) {
    std::cout << slot_name(t->construct, t->inputs) << ":";
    for (const auto& o : t->outputs) std::cout << " " << print(o.templ);
    std::cout << (t->outputs.empty() ? " top\n" : "\n");
  }

  const AbstractValue args[] = {AbstractValue::of({Predicate::len_eq(3)}), AbstractValue::of({Predicate::len_neq(2)})};
  std::cout << "concat((len = 3), (len != 2)) = " << print(apply_transformer(table, Construct{Op::Concat, {}}, args)) << "\n";
}
