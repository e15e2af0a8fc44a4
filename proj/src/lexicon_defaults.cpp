#include "deop/lexicon.hpp"

namespace deop {

// Kept byte-identical with data/npi_lexicon.txt and data/blocklist.txt;
// a unit test enforces the equality.

namespace {

constexpr std::string_view kNpiLexicon =
    "# Negative polarity items, one pattern per line.\n"
    "# '/' expands the token position into alternatives.\n"
    "any\n"
    "at all\n"
    "give a damn\n"
    "do a thing\n"
    "bat an eye\n"
    "in weeks/ages/years\n"
    "drink a drop\n"
    "last/be/take long\n"
    "arrive/leave until\n"
    "would care/mind\n"
    "budge\n"
    "red cent\n"
    "but what\n"
    "give a shit\n"
    "eat a bite\n"
    "yet\n"
    "ever\n"
    "bother to\n"
    "lift a finger\n"
    "to speak of\n";

constexpr std::string_view kBlocklist =
    "# Well-known downward-entailing operators; NPI contexts containing\n"
    "# any of these are discarded before scoring.\n"
    "not\n"
    "n't\n"
    "no\n"
    "none\n"
    "neither\n"
    "nor\n"
    "few\n"
    "each\n"
    "every\n"
    "without\n";

}  // namespace

std::string_view default_npi_lexicon_text() { return kNpiLexicon; }

std::string_view default_blocklist_text() { return kBlocklist; }

}  // namespace deop
