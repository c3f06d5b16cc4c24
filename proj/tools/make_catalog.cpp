// Regenerates the bundled catalog JSON.
#include <cstdlib>
#include <iostream>

#include "rootreg/catalog.hpp"

int main(int argc, char** argv) {
  int max_rank = argc > 1 ? std::atoi(argv[1]) : 8;
  int max_second = argc > 2 ? std::atoi(argv[2]) : 10;
  std::string path = argc > 3 ? argv[3] : "data/catalog.json";
  rootreg::Catalog cat = rootreg::build_catalog(max_rank, max_second);
  rootreg::save_catalog(cat, path);
  std::cout << "wrote " << cat.entries.size() << " entries to " << path << "\n";
  return 0;
}
