// Regenerates the bundled synthetic corpus: gen_toy_corpus <output-path>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "toy_corpus.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_toy_corpus <output-path>\n";
        return 2;
    }
    const auto corpus = toy::make_toy_corpus();
    std::ofstream out(argv[1], std::ios::binary | std::ios::trunc);
    if (!out) {
        std::cerr << "cannot write " << argv[1] << '\n';
        return 3;
    }
    const std::string text = corpus.text();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    std::cout << corpus.sentences.size() << " sentences\n";
    return 0;
}
