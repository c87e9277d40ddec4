#include <iostream>

#include "reference_runs.hpp"

int main() {
  std::cout << dnfa::reference_run_snapshots();
  return 0;
}
