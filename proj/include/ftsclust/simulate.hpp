#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "ftsclust/fts.hpp"
#include "ftsclust/rng.hpp"

namespace ftsclust {

// Standard Brownian motion on the uniform p-point grid (B(0) = 0, Gaussian
// increments with variance = grid spacing), scaled by `scale`.
Eigen::VectorXd brownian_curve(std::size_t p, double scale, Rng& rng);

// FAR(2) recursion X_t = G1 X_{t-1} + G2 X_{t-2} + eps_t with exponential
// kernels Gk(u,v) = c[2k-2] * exp(-c[2k-1] (u^2 + v^2)), trapezoid-rule
// integral operators, Brownian noise scaled so Var(eps(1)) = 1/T, zero
// initial curves, and `burn_in` discarded iterates.
FunctionalTimeSeries far2(const std::array<double, 4>& c, std::size_t T, std::size_t p,
                          std::uint64_t seed, std::size_t burn_in = 100);

// X_t(u) = 0.75 * G_t(u) * exp(G_t(u)) + eps_t(u), G_t = integral operator of
// c[0]*exp(-c[1](u^2+v^2)) applied to X_{t-1}. Aborts if |G| leaves [-50, 50].
FunctionalTimeSeries nonlinear_far1(const std::array<double, 2>& c, std::size_t T, std::size_t p,
                                    std::uint64_t seed, std::size_t burn_in = 100);

// Unit-variance error curve for the fGARCH model: sqrt(ln 2) * 2^(-200u) *
// B(2^(400u) / ln 2), sampled via Gaussian increments at the (already sorted)
// transformed times.
Eigen::VectorXd fgarch_innovation(const Grid& grid, Rng& rng);

// fGARCH(1,1): sigma_t^2(u) = 0.01 + int alpha(u,v) X_{t-1}^2(v) dv
//                                   + int beta(u,v) sigma_{t-1}^2(v) dv,
// alpha = beta = c * u(1-u) v(1-v); X_t = sigma_t * eps_t; sigma_0^2 = 0.01.
FunctionalTimeSeries fgarch11(double c, std::size_t T, std::size_t p, std::uint64_t seed,
                              std::size_t burn_in = 100);

// Independent Brownian curves scaled by 1/sqrt(T); the isolated series of
// scenarios 3 and 4.
FunctionalTimeSeries white_noise_series(std::size_t T, std::size_t p, std::uint64_t seed);

struct ScenarioDataset {
    std::vector<FunctionalTimeSeries> series;
    std::vector<int> labels;  // clusters numbered from 1; 0 marks the isolated series
    int scenario_id = 0;
    std::uint64_t seed = 0;
};

// The four benchmark collections. Scenarios 1 and 2 hold four clusters of
// five series; scenarios 3 and 4 hold 5 + 5 plus one isolated white-noise
// series (label 0). With unequal_lengths the per-series length is drawn from
// {200, 300, 400, 500, 600} and the T argument is ignored.
ScenarioDataset make_scenario(int id, std::size_t T, std::size_t p, std::uint64_t seed,
                              bool unequal_lengths = false);

}  // namespace ftsclust
