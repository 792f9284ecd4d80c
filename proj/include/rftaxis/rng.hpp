#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace rftaxis {

// splitmix64 finalizer; used to derive child seeds from a master seed so that
// run i / node j streams are independent of worker scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t run_index) {
    return splitmix64(master ^ splitmix64(run_index + 1));
}

inline std::uint64_t derive_node_seed(std::uint64_t run_seed, std::uint64_t node_index) {
    return splitmix64(run_seed ^ (0x9E3779B97F4A7C15ULL * (node_index + 1)));
}

// mt19937_64 with explicit canonical-double mapping and fixed-consumption
// Box-Muller normals. std::uniform_real_distribution / normal_distribution are
// implementation-defined, which would break byte-reproducibility across
// toolchains; these mappings consume a fixed number of engine words per draw,
// so a serialized stream resumes bit-exactly.
class RngStream {
public:
    RngStream() : eng_(0) {}
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    // uniform on [0, 1), 53-bit resolution
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // uniform on (0, 1]; safe as a log argument
    double uniform_pos() {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal, Box-Muller, exactly two engine words
    double gauss() {
        double u1 = uniform_pos();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t raw() { return eng_(); }

    std::string serialize() const {
        std::ostringstream os;
        os << eng_;
        return os.str();
    }
    void deserialize(const std::string& s) {
        std::istringstream is(s);
        is >> eng_;
    }

    bool operator==(const RngStream& o) const { return eng_ == o.eng_; }

private:
    std::mt19937_64 eng_;
};

} // namespace rftaxis
