#pragma once
#include <cstddef>
#include <cstdint>

namespace occ {

// Search bounds shared by every bounded certification.
struct Config {
    std::size_t horizon = 12;  // longest probe word
    std::size_t window = 3;    // consecutive agreeing increments required for stability
    std::size_t cutoff = 6;    // longest enumerated boundary or code word
    std::size_t level = 10;    // deepest lambda-graph level
    std::uint64_t seed = 20240521;
    unsigned jobs = 1;
};

}  // namespace occ
