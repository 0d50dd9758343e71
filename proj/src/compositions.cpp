#include "workex/compositions.hpp"

#include <limits>
#include <sstream>

#include "workex/errors.hpp"

namespace workex {

std::int64_t composition_count(std::int64_t total, int parts) {
    if (total < 0 || parts < 1) {
        throw DomainError("composition_count: invalid arguments");
    }
    // C(total+parts-1, parts-1) by incremental product; saturate well above
    // any plausible guard instead of overflowing.
    constexpr std::int64_t cap = std::numeric_limits<std::int64_t>::max() / 4;
    long double count = 1.0L;
    for (int i = 1; i < parts; ++i) {
        count *= static_cast<long double>(total + i);
        count /= static_cast<long double>(i);
        if (count > static_cast<long double>(cap)) return cap;
    }
    return static_cast<std::int64_t>(count + 0.5L);
}

void check_composition_guard(std::int64_t total, int parts,
                             std::int64_t max_compositions) {
    const std::int64_t count = composition_count(total, parts);
    if (count > max_compositions) {
        std::ostringstream msg;
        msg << "lattice sum needs " << count << " compositions, guard is "
            << max_compositions;
        throw TooManyCompositions(msg.str());
    }
}

void first_composition_lex(std::span<std::int64_t> n, std::int64_t total) {
    for (std::int64_t& x : n) x = 0;
    n.back() = total;
}

bool next_composition_lex(std::span<std::int64_t> n) {
    const int d = static_cast<int>(n.size());
    std::int64_t suffix = n[static_cast<std::size_t>(d - 1)];
    for (int i = d - 2; i >= 0; --i) {
        if (suffix > 0) {
            n[static_cast<std::size_t>(i)] += 1;
            for (int j = i + 1; j < d - 1; ++j) n[static_cast<std::size_t>(j)] = 0;
            n[static_cast<std::size_t>(d - 1)] = suffix - 1;
            return true;
        }
        suffix += n[static_cast<std::size_t>(i)];
    }
    return false;
}

std::vector<std::int64_t> composition_offsets(std::int64_t total, int parts) {
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(total) + 2, 0);
    std::int64_t running = 0;
    for (std::int64_t t = 0; t <= total; ++t) {
        offsets[static_cast<std::size_t>(t)] = running;
        running += composition_count(total - t, parts - 1);
    }
    offsets[static_cast<std::size_t>(total) + 1] = running;
    return offsets;
}

}  // namespace workex
