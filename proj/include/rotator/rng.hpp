#pragma once

#include <cmath>
#include <cstdint>

namespace rotator {

/**
 * Deterministic splittable random generator.
 *
 * One root seed per experiment; independent substreams are derived per
 * state index so that parallel scans produce identical output regardless
 * of thread count. The core is splitmix64, whose output is fully
 * specified (unlike std::uniform_real_distribution), so CSV outputs are
 * reproducible byte-for-byte across platforms.
 */
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(seed) {}

    /// Substream i of a root seed; substreams are mutually decorrelated.
    static SplitRng substream(std::uint64_t root_seed, std::uint64_t index) {
        SplitRng mix(root_seed);
        std::uint64_t a = mix.next_u64();
        std::uint64_t b = mix.next_u64();
        return SplitRng(a + (index + 1) * (b | 1));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform point on the unit sphere.
    void sphere(double& nx, double& ny, double& nz) {
        double z = uniform(-1.0, 1.0);
        double phi = uniform(0.0, 2.0 * M_PI);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        nx = r * std::cos(phi);
        ny = r * std::sin(phi);
        nz = z;
    }

    /// Uniform rotation matrix (Shoemake quaternion method), row-major 3x3.
    void rotation(double R[3][3]) {
        double u1 = uniform(), u2 = uniform(), u3 = uniform();
        double s1 = std::sqrt(1.0 - u1), s2 = std::sqrt(u1);
        double qx = s1 * std::sin(2.0 * M_PI * u2);
        double qy = s1 * std::cos(2.0 * M_PI * u2);
        double qz = s2 * std::sin(2.0 * M_PI * u3);
        double qw = s2 * std::cos(2.0 * M_PI * u3);
        R[0][0] = 1 - 2 * (qy * qy + qz * qz);
        R[0][1] = 2 * (qx * qy - qz * qw);
        R[0][2] = 2 * (qx * qz + qy * qw);
        R[1][0] = 2 * (qx * qy + qz * qw);
        R[1][1] = 1 - 2 * (qx * qx + qz * qz);
        R[1][2] = 2 * (qy * qz - qx * qw);
        R[2][0] = 2 * (qx * qz - qy * qw);
        R[2][1] = 2 * (qy * qz + qx * qw);
        R[2][2] = 1 - 2 * (qx * qx + qy * qy);
    }

private:
    std::uint64_t state_;
};

} // namespace rotator
