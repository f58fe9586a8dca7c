#include "ecpcs/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ecpcs {

// SplitMix64 finalizer.
std::uint64_t Rng::mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t Rng::derive(std::uint64_t base, std::uint64_t stream) {
    return mix(mix(base) ^ mix(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("uniform_int: bound must be positive");
    }
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double Rng::uniform_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t stable_argmax(std::span<const double> values, Rng& rng, bool* tied) {
    if (values.empty()) {
        throw std::invalid_argument("stable_argmax: empty input");
    }
    if (!std::isfinite(values[0])) {
        throw std::invalid_argument("stable_argmax: non-finite entry");
    }
    double best = values[0];
    std::vector<std::size_t> winners{0};
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw std::invalid_argument("stable_argmax: non-finite entry");
        }
        if (values[i] > best) {
            best = values[i];
            winners.assign(1, i);
        } else if (values[i] == best) {
            winners.push_back(i);
        }
    }
    if (tied != nullptr) {
        *tied = winners.size() > 1;
    }
    if (winners.size() == 1) {
        return winners[0];
    }
    return winners[rng.uniform_int(winners.size())];
}

}  // namespace ecpcs
