#include <iostream>

#include "fixtures.h"

// Writes the case-study corpus (records, features and rendered images).
int main(int argc, char **argv) {
  if (argc != 2) {
    std::cerr << "usage: make_demo_corpus <dir>\n";
    return 1;
  }
  scrollbio::testing::WriteCaseStudyCorpus(argv[1]);
  std::cout << "wrote demo corpus to " << argv[1] << "\n";
  return 0;
}
