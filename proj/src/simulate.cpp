#include "ftsclust/simulate.hpp"

#include <cmath>
#include <string>

#include "ftsclust/errors.hpp"

namespace ftsclust {

namespace {

// Kernel matrix of the integral operator f -> int c0*exp(-c1(u^2+v^2)) f(v) dv
// on the grid: K(a,b) = kernel(u_a, u_b) * w_b.
// The bump kernel factors as g(u)g(v) with g(u) = exp(-c1 u^2), so its operator
// norm equals ||g||^2. Scaling by that norm makes c0 the autoregressive gain,
// the usual convention when a kernel shape is paired with a stated coefficient.
Eigen::MatrixXd exp_kernel_operator(const Grid& grid, double c0, double c1) {
    const Eigen::Index p = static_cast<Eigen::Index>(grid.size());
    double bump_norm = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        bump_norm += std::exp(-2.0 * c1 * grid[j] * grid[j]) * grid.weights()[j];
    }
    const double gain = c0 / bump_norm;
    Eigen::MatrixXd K(p, p);
    for (Eigen::Index a = 0; a < p; ++a) {
        const double ua = grid[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < p; ++b) {
            const double ub = grid[static_cast<std::size_t>(b)];
            K(a, b) = gain * std::exp(-c1 * (ua * ua + ub * ub)) * grid.weights()[b];
        }
    }
    return K;
}

}  // namespace

Eigen::VectorXd brownian_curve(std::size_t p, double scale, Rng& rng) {
    if (p < 2) throw DimensionError("brownian_curve needs p >= 2");
    if (!(scale > 0.0)) throw DomainError("scale must be > 0");
    Eigen::VectorXd b(static_cast<Eigen::Index>(p));
    b[0] = 0.0;
    const double sd = std::sqrt(1.0 / static_cast<double>(p - 1));
    for (std::size_t j = 1; j < p; ++j) {
        b[static_cast<Eigen::Index>(j)] =
            b[static_cast<Eigen::Index>(j - 1)] + sd * rng.gaussian();
    }
    return b * scale;
}

FunctionalTimeSeries far2(const std::array<double, 4>& c, std::size_t T, std::size_t p,
                          std::uint64_t seed, std::size_t burn_in) {
    if (T < 3) throw DomainError("far2 needs T >= 3");
    Grid grid = Grid::uniform(p);
    const Eigen::MatrixXd K1 = exp_kernel_operator(grid, c[0], c[1]);
    const Eigen::MatrixXd K2 = exp_kernel_operator(grid, c[2], c[3]);
    Rng rng(seed);
    const double noise_scale = 1.0 / std::sqrt(static_cast<double>(T));
    Eigen::VectorXd prev1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    Eigen::VectorXd prev2 = prev1;
    Eigen::MatrixXd values(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(p));
    for (std::size_t step = 0; step < burn_in + T; ++step) {
        Eigen::VectorXd x = K1 * prev1 + K2 * prev2 + brownian_curve(p, noise_scale, rng);
        if (step >= burn_in) {
            values.row(static_cast<Eigen::Index>(step - burn_in)) = x.transpose();
        }
        prev2 = std::move(prev1);
        prev1 = std::move(x);
    }
    return FunctionalTimeSeries(std::move(values), std::move(grid));
}

FunctionalTimeSeries nonlinear_far1(const std::array<double, 2>& c, std::size_t T, std::size_t p,
                                    std::uint64_t seed, std::size_t burn_in) {
    if (T < 2) throw DomainError("nonlinear_far1 needs T >= 2");
    Grid grid = Grid::uniform(p);
    const Eigen::MatrixXd K = exp_kernel_operator(grid, c[0], c[1]);
    Rng rng(seed);
    const double noise_scale = 1.0 / std::sqrt(static_cast<double>(T));
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
    Eigen::MatrixXd values(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(p));
    for (std::size_t step = 0; step < burn_in + T; ++step) {
        Eigen::VectorXd g = K * prev;
        if (g.cwiseAbs().maxCoeff() > 50.0) {
            throw StabilityError("nonlinear FAR state left the stable region (|G| > 50)");
        }
        Eigen::VectorXd x =
            0.75 * g.cwiseProduct(g.array().exp().matrix()) + brownian_curve(p, noise_scale, rng);
        if (step >= burn_in) {
            values.row(static_cast<Eigen::Index>(step - burn_in)) = x.transpose();
        }
        prev = std::move(x);
    }
    return FunctionalTimeSeries(std::move(values), std::move(grid));
}

Eigen::VectorXd fgarch_innovation(const Grid& grid, Rng& rng) {
    const std::size_t p = grid.size();
    // Transformed times s(u) = 2^(400u)/ln 2 are increasing with u; sample
    // the Brownian motion there by independent increments. Magnitudes stay
    // within 2^(+-400), comfortably inside double range.
    const double ln2 = 0.69314718055994530941723212145818;
    Eigen::VectorXd eps(static_cast<Eigen::Index>(p));
    double prev_time = 0.0;
    double b = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double u = grid[j];
        const double s = std::exp2(400.0 * u) / ln2;
        b += std::sqrt(s - prev_time) * rng.gaussian();
        prev_time = s;
        eps[static_cast<Eigen::Index>(j)] = std::sqrt(ln2) * std::exp2(-200.0 * u) * b;
    }
    return eps;
}

FunctionalTimeSeries fgarch11(double c, std::size_t T, std::size_t p, std::uint64_t seed,
                              std::size_t burn_in) {
    if (T < 2) throw DomainError("fgarch11 needs T >= 2");
    if (!(c >= 0.0)) throw DomainError("fgarch11 kernel constant must be nonnegative");
    Grid grid = Grid::uniform(p);
    const Eigen::Index pi = static_cast<Eigen::Index>(p);
    // alpha = beta = c * phi(u) phi(v) with phi(u) = u(1-u) is rank one, so
    // both integral operators reduce to phi * <phi-weighted, .>.
    Eigen::VectorXd phi(pi);
    for (std::size_t j = 0; j < p; ++j) phi[static_cast<Eigen::Index>(j)] = grid[j] * (1.0 - grid[j]);
    const Eigen::VectorXd phi_w = phi.cwiseProduct(grid.weights());
    Rng rng(seed);
    Eigen::VectorXd sig2 = Eigen::VectorXd::Constant(pi, 0.01);
    Eigen::VectorXd x = sig2.cwiseSqrt().cwiseProduct(fgarch_innovation(grid, rng));
    Eigen::MatrixXd values(static_cast<Eigen::Index>(T), pi);
    for (std::size_t step = 0; step < burn_in + T; ++step) {
        const double ax = c * phi_w.dot(x.cwiseProduct(x));
        const double bs = c * phi_w.dot(sig2);
        sig2 = (Eigen::VectorXd::Constant(pi, 0.01) + (ax + bs) * phi).eval();
        x = sig2.cwiseSqrt().cwiseProduct(fgarch_innovation(grid, rng));
        if (step >= burn_in) {
            values.row(static_cast<Eigen::Index>(step - burn_in)) = x.transpose();
        }
    }
    return FunctionalTimeSeries(std::move(values), std::move(grid));
}

FunctionalTimeSeries white_noise_series(std::size_t T, std::size_t p, std::uint64_t seed) {
    Grid grid = Grid::uniform(p);
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(T));
    Eigen::MatrixXd values(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(p));
    for (std::size_t t = 0; t < T; ++t) {
        values.row(static_cast<Eigen::Index>(t)) = brownian_curve(p, scale, rng).transpose();
    }
    return FunctionalTimeSeries(std::move(values), std::move(grid));
}

ScenarioDataset make_scenario(int id, std::size_t T, std::size_t p, std::uint64_t seed,
                              bool unequal_lengths) {
    if (id < 1 || id > 4) throw DomainError("scenario id must be 1..4");
    const std::size_t count = (id <= 2) ? 20 : 11;
    std::vector<std::size_t> lengths(count, T);
    if (unequal_lengths) {
        Rng length_rng(derive_seed(seed, 0x756e6571756c6eULL));
        for (std::size_t i = 0; i < count; ++i) {
            lengths[i] = 200 + 100 * length_rng.below(5);
        }
    }
    ScenarioDataset out;
    out.scenario_id = id;
    out.seed = seed;
    out.series.reserve(count);
    out.labels.reserve(count);
    auto member_seed = [&](std::size_t i) { return derive_seed(seed, i); };
    auto push_block = [&](int label, std::size_t block, std::size_t offset, auto&& gen) {
        for (std::size_t k = 0; k < block; ++k) {
            const std::size_t i = offset + k;
            out.series.push_back(gen(lengths[i], member_seed(i)));
            out.labels.push_back(label);
        }
    };
    switch (id) {
        case 1: {
            const std::array<std::array<double, 4>, 4> coeff = {{{-0.3, 0.1, 0.0, 0.0},
                                                                 {0.3, 0.3, 0.0, 0.0},
                                                                 {-0.4, 0.5, -0.3, 0.5},
                                                                 {0.4, 0.7, 0.3, 0.7}}};
            for (std::size_t cl = 0; cl < 4; ++cl) {
                push_block(static_cast<int>(cl) + 1, 5, cl * 5, [&](std::size_t Ti, std::uint64_t s) {
                    return far2(coeff[cl], Ti, p, s);
                });
            }
            break;
        }
        case 2: {
            push_block(1, 5, 0, [&](std::size_t Ti, std::uint64_t s) {
                return nonlinear_far1({0.5, 0.5}, Ti, p, s);
            });
            push_block(2, 5, 5, [&](std::size_t Ti, std::uint64_t s) {
                return nonlinear_far1({0.9, 0.5}, Ti, p, s);
            });
            push_block(3, 5, 10, [&](std::size_t Ti, std::uint64_t s) {
                return fgarch11(14.0, Ti, p, s);
            });
            push_block(4, 5, 15, [&](std::size_t Ti, std::uint64_t s) {
                return fgarch11(15.0, Ti, p, s);
            });
            break;
        }
        case 3: {
            push_block(1, 5, 0, [&](std::size_t Ti, std::uint64_t s) {
                return far2({-0.4, 0.5, -0.4, 0.5}, Ti, p, s);
            });
            push_block(2, 5, 5, [&](std::size_t Ti, std::uint64_t s) {
                return far2({0.4, 0.5, 0.4, 0.5}, Ti, p, s);
            });
            push_block(0, 1, 10, [&](std::size_t Ti, std::uint64_t s) {
                return white_noise_series(Ti, p, s);
            });
            break;
        }
        case 4: {
            push_block(1, 5, 0, [&](std::size_t Ti, std::uint64_t s) {
                return nonlinear_far1({0.9, 0.5}, Ti, p, s);
            });
            push_block(2, 5, 5, [&](std::size_t Ti, std::uint64_t s) {
                return fgarch11(14.0, Ti, p, s);
            });
            push_block(0, 1, 10, [&](std::size_t Ti, std::uint64_t s) {
                return white_noise_series(Ti, p, s);
            });
            break;
        }
        default:
            throw DomainError("scenario id must be 1..4");
    }
    return out;
}

}  // namespace ftsclust
