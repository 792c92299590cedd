#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace proofread {

/// Philox4x32-10 block function (Salmon et al., SC'11).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key);
};

/// Uniform random bit generator over one (seed, ligand, trial) substream.
/// The stream is a pure function of those three values, so work can be split
/// across threads in any way without changing the draws.
class CounterRng {
public:
    using result_type = std::uint32_t;

    CounterRng(std::uint64_t seed, std::uint64_t ligand, std::uint32_t trial);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform double in the open interval (0, 1), 53 random bits.
    double uniform_open();

private:
    void refill();

    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    Philox4x32::Counter buffer_{};
    int next_ = 4;
};

}  // namespace proofread
