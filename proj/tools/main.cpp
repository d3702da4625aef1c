#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef CGT_HAVE_OPENMP
#include <omp.h>
#endif

#include "cgt/cli.hpp"

int main(int argc, char** argv) {
#ifdef CGT_HAVE_OPENMP
  // CGT_THREADS caps the worker count, e.g. for timing the serial case.
  if (const char* env = std::getenv("CGT_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
  }
#endif
  std::vector<std::string> args(argv + 1, argv + argc);
  return cgt::cli::run(args, std::cout, std::cerr);
}
