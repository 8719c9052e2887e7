#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsbreak/breaks.hpp"
#include "tsbreak/joint.hpp"
#include "tsbreak/series.hpp"

namespace tsbreak {

// Name of the pseudorandom scheme used by gen_series, recorded in run
// metadata so generated datasets are reproducible across builds.
inline constexpr const char* kNoiseAlgorithm = "mt19937_64/box-muller";

struct TrendPiece {
    int start = 0; // 1-based inclusive
    int end = 0;
    double a = 0.0;
    double b = 0.0;
};

// Either an explicit per-phase value vector (cycled with global phase
// ((t-1) mod d)+1) or a sinusoid amplitude*sin(2*pi*t/d + phase) evaluated
// at the global index.
struct SeasonalSpec {
    int d = 0;
    double amplitude = 1.0;
    double phase = 0.0;
    std::vector<double> values; // non-empty = explicit per-phase values
};

struct GeneratorSpec {
    int T = 0;
    std::vector<TrendPiece> trend_pieces; // must tile 1..T
    std::optional<SeasonalSpec> seasonal;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::string label = "y";
};

// Y_t = piecewise trend + seasonal + Gaussian(0, sigma^2) noise from a
// seeded generator; identical spec+seed gives bit-identical output.
TimeSeries gen_series(const GeneratorSpec& spec);

// Deterministic standard-normal stream: 53-bit uniforms from mt19937_64
// through the Box-Muller transform. Exposed so tests can freeze expected
// noise values.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}
    double next();

private:
    std::mt19937_64 rng_;
};

// Exhaustive enumeration of all partitions into m segments (respecting
// h_min), solving the per-segment regression from scratch; returns the
// global optimum under the same tie-break rule as the dynamic program.
// Refuses to run (InfeasibleError) when more than max_partitions
// partitions would be visited.
BreakSolution brute_force_breaks(const TimeSeries& y, int m, int h_min,
                                 std::int64_t max_partitions = 10'000'000);

struct JointOracleBounds {
    int m_max = 2;   // <= 2
    int p_max = 12;  // <= 12
    int h_min = 2;
};

// Global minimizer of the joint objective over all (m, break set, p) in the
// bounded search space, solving a full least-squares problem per candidate.
// Desk-scale certification oracle: requires T <= 40 and the stated bounds.
JointModel brute_force_joint(const TimeSeries& y, double lambda,
                             const JointOracleBounds& bounds = {});

} // namespace tsbreak
