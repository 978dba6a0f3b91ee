#pragma once

#include <cstdint>
#include <random>

#include "ars3d/group.hpp"

namespace ars3d {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Seeded sampler with a portable uniform mapping (std distributions are
/// implementation-defined, which would break byte-identical reports).
class Sampler {
public:
    explicit Sampler(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int sign() { return (engine_() >> 63) != 0U ? 1 : -1; }

    /// Uniform in the disk of the given radius.
    Vec2 disk(double radius) {
        for (;;) {
            const Vec2 v{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
            if (v.dot(v) <= 1.0) return v * radius;
        }
    }

    /// Point with |t| <= box and ||v|| <= box.
    GroupPoint point(double box) {
        const double t = uniform(-box, box);
        return {t, disk(box)};
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ars3d
