// Explain why a candidate program is wrong on an example with a tree
// interpolant, and list the predicate templates it suggests.

#include <atlas/interpolation.hpp>

#include <iostream>

int main() {
  using namespace atlas;
  const auto program = parse_program("(concat (input) (const \"18\"))");
  const auto tree = construct_tree(program, U"CAV", U"CAV2018");
  const auto itp = find_tree_itp(tree);
  std::cout << dump(tree, itp);
  std::cout << "checker: " << (check_tree_itp(tree, itp).empty() ? "valid" : "invalid") << "\ntemplates:";
  for (auto t : extract_templates(itp)) std::cout << " " << print(t);
  std::cout << "\n";
}
