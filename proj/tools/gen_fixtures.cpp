// Regenerates the committed fixtures: gen-fixtures [dir]
#include <exception>
#include <iostream>

#include "hetnet/fixtures.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  try {
    for (const auto& name : hetnet::generate_fixtures(dir)) std::cout << (dir / name).string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
