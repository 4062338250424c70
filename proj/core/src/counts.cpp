#include "qsteer/counts.hpp"

#include <stdexcept>

namespace qsteer {

int alice_row(int a) {
    switch (a) {
    case +1:
        return 0;
    case -1:
        return 1;
    case 0:
        return 2;
    }
    throw std::invalid_argument("alice_row: outcome must be +1, -1 or 0");
}

int bob_col(int b) {
    switch (b) {
    case +1:
        return 0;
    case -1:
        return 1;
    }
    throw std::invalid_argument("bob_col: outcome must be +1 or -1");
}

double JointTable::sum() const {
    double total = 0.0;
    for (const auto& row : p) {
        total += row[0] + row[1];
    }
    return total;
}

std::uint64_t CountTable::total() const {
    std::uint64_t total = 0;
    for (const auto& row : n) {
        total += row[0] + row[1];
    }
    return total;
}

} // namespace qsteer
