// Regenerates data/curves.json: make_corpus > data/curves.json
#include <iostream>

#include "thetanull/corpus.hpp"

int main() { std::cout << thetanull::corpusDocument().dump(1) << "\n"; }
