#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace workex {

// Default guard on the number of weak compositions a lattice sum may visit.
inline constexpr std::int64_t k_default_composition_guard = 10'000'000;

// Number of weak compositions of total into parts, C(total+parts-1, parts-1),
// saturated at a large sentinel when it overflows the guard comparisons.
std::int64_t composition_count(std::int64_t total, int parts);

// Throws TooManyCompositions when the count exceeds max_compositions.
void check_composition_guard(std::int64_t total, int parts,
                             std::int64_t max_compositions);

// Advance n to its lexicographic successor among weak compositions of a fixed
// total; returns false from the last one (all mass in n[0]). The first
// composition in this order is (0, ..., 0, total).
bool next_composition_lex(std::span<std::int64_t> n);

void first_composition_lex(std::span<std::int64_t> n, std::int64_t total);

// Invoke f(n) for every weak composition of total into parts, in
// lexicographic order. Serial; the parallel kernels partition on n[0] and
// reuse the same successor function on the tail.
template <class F>
void for_each_composition(std::int64_t total, int parts, F&& f) {
    std::vector<std::int64_t> n(static_cast<std::size_t>(parts));
    first_composition_lex(n, total);
    do {
        f(std::span<const std::int64_t>(n));
    } while (next_composition_lex(n));
}

// offsets[t] = index of the first composition with n[0] == t in the global
// lexicographic enumeration; offsets[total+1] = total count.
std::vector<std::int64_t> composition_offsets(std::int64_t total, int parts);

}  // namespace workex
