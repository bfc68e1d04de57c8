#include "raidsim/markov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "raidsim/errors.hpp"

namespace raidsim {

std::string MarkovSpec::generator_violation() const {
    const std::size_t k = names.size();
    if (generator.size() != k) return "generator has the wrong number of rows";
    for (std::size_t i = 0; i < k; ++i) {
        if (generator[i].size() != k) return "row " + names[i] + " has the wrong width";
        double sum = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && generator[i][j] < 0.0) return "negative rate " + names[i] + " -> " + names[j];
            sum += generator[i][j];
            scale = std::max(scale, std::abs(generator[i][j]));
        }
        if (std::abs(sum) > 1e-12 * std::max(1.0, scale)) return "row " + names[i] + " does not sum to zero";
    }
    return {};
}

MarkovSpec make_markov(std::vector<std::string> names, std::vector<std::vector<double>> generator) {
    MarkovSpec s;
    const std::size_t k = names.size();
    s.names = std::move(names);
    s.generator = std::move(generator);
    s.du_fraction.assign(k, 0.0);
    s.dl_fraction.assign(k, 0.0);
    if (auto v = s.generator_violation(); !v.empty()) throw ParameterError(v);
    return s;
}

MarkovSpec build_raid5_markov(const DiskModel& disk, const CodeConfig& code, const PolicyConfig& policy,
                              double mission, const MarkovOptions& options) {
    if (!code.is_raid5()) throw ParameterError("the Markov baseline models RAID5 only");
    if (policy.spare) throw ParameterError("the Markov baseline models manual replacement only");
    if (policy.dos != 0.0) throw ParameterError("the Markov baseline assumes no survivability (dos = 0)");

    MarkovSpec s;
    s.names = {"OP", "EXP", "EXP_LSE", "EXP_r", "DU", "DL_FF", "DL_FLSE"};
    const std::size_t k = MarkovSpec::kStates;
    s.generator.assign(k, std::vector<double>(k, 0.0));
    s.du_fraction.assign(k, 0.0);
    s.dl_fraction.assign(k, 0.0);

    auto repair = [&](const WeibullParams& w) {
        return options.repair_rates == RepairRateMode::Mean ? 1.0 / w.mean() : match_exponential_rate(w, mission);
    };
    s.disk_failure = match_exponential_rate(disk.d_df, mission);
    s.lse = match_exponential_rate(disk.d_lse, mission);
    s.scrub = match_exponential_rate(disk.d_scrub, mission);
    s.crash = match_exponential_rate(policy.d_crash, mission);
    s.replace = repair(policy.d_dr);
    s.recover = repair(policy.d_her);
    s.rebuild = repair(disk.d_rec);
    s.hep = policy.hep;

    const double n = code.n;
    const double lam = s.disk_failure;
    auto& Q = s.generator;
    using S = MarkovSpec;
    Q[S::OP][S::EXP] = n * lam;
    Q[S::OP][S::EXP_LSE] = n * s.lse;
    Q[S::EXP_LSE][S::OP] = s.scrub;
    const double lse_fraction = code.stripe_bytes() / usable_capacity(code, disk, 1);
    if (options.absorb_lse_loss) {
        Q[S::EXP_LSE][S::EXP] = lam;
        Q[S::EXP_LSE][S::DL_FLSE] = (n - 1) * lam;
        s.dl_fraction[S::DL_FLSE] = lse_fraction;
    } else {
        Q[S::EXP_LSE][S::EXP] = n * lam;
        s.loss_transitions.push_back({S::EXP_LSE, S::EXP, (n - 1) * lam, lse_fraction});
    }
    Q[S::EXP][S::EXP_R] = (1.0 - s.hep) * s.replace;
    Q[S::EXP][S::DU] = s.hep * s.replace;
    Q[S::EXP][S::DL_FF] = (n - 1) * lam;
    Q[S::EXP_R][S::OP] = s.rebuild;
    Q[S::EXP_R][S::DL_FF] = (n - 1) * lam;
    Q[S::DU][S::EXP_R] = s.recover;
    Q[S::DU][S::DL_FF] = s.crash + (n - 2) * lam;
    for (std::size_t i = 0; i < k; ++i) {
        double out = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            if (j != i) out += Q[i][j];
        Q[i][i] = -out;
    }
    s.du_fraction[S::DU] = 1.0;
    s.dl_fraction[S::DL_FF] = 1.0;
    return s;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

using Vec = std::vector<double>;

// y = [p, occupancy]; dy/dt = [p Q, p].
void rhs(const MarkovSpec& spec, const Vec& y, Vec& dy) {
    const std::size_t k = spec.size();
    for (std::size_t j = 0; j < k; ++j) dy[j] = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double pi = y[i];
        if (pi == 0.0) continue;
        const auto& row = spec.generator[i];
        for (std::size_t j = 0; j < k; ++j) dy[j] += pi * row[j];
    }
    for (std::size_t i = 0; i < k; ++i) dy[k + i] = y[i];
}

Trajectory integrate(const MarkovSpec& spec, double mission, double max_step) {
    const std::size_t k = spec.size();
    const std::size_t dim = 2 * k;
    constexpr double rtol = 1e-11, atol = 1e-14;
    constexpr int grid_points = 100;

    Trajectory tr;
    tr.mission = mission;
    Vec y(dim, 0.0);
    y[spec.initial] = 1.0;
    tr.times.push_back(0.0);
    tr.probabilities.emplace_back(y.begin(), y.begin() + k);

    Vec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), tmp(dim), y5(dim);
    rhs(spec, y, k1);
    double t = 0.0;
    double h = std::min(max_step, mission / grid_points);
    for (int g = 1; g <= grid_points; ++g) {
        const double target = mission * g / grid_points;
        while (t < target) {
            const bool last = t + h >= target;
            const double hh = last ? target - t : h;
            auto stage = [&](Vec& out, std::initializer_list<std::pair<double, const Vec*>> terms) {
                for (std::size_t i = 0; i < dim; ++i) {
                    double acc = y[i];
                    for (const auto& [a, kv] : terms) acc += hh * a * (*kv)[i];
                    tmp[i] = acc;
                }
                rhs(spec, tmp, out);
            };
            stage(k2, {{a21, &k1}});
            stage(k3, {{a31, &k1}, {a32, &k2}});
            stage(k4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
            stage(k5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
            stage(k6, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
            for (std::size_t i = 0; i < dim; ++i)
                y5[i] = y[i] + hh * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            rhs(spec, y5, k7);
            double err = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                const double e =
                    hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err = std::max(err, std::abs(e) / sc);
            }
            if (!std::isfinite(err)) throw NumericalError("non-finite state during transient solve");
            if (err <= 1.0) {
                t = last ? target : t + hh;
                y.swap(y5);
                k1.swap(k7);
                ++tr.steps;
                double total = 0.0;
                for (std::size_t i = 0; i < k; ++i) total += y[i];
                if (std::abs(total - 1.0) > 1e-9) {
                    std::ostringstream os;
                    os << "probability drifted to " << total << " at t=" << t;
                    throw NumericalError(os.str());
                }
            }
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (err <= 1.0 && last) {
                h = std::min(max_step, std::max(h, hh * factor));
            } else {
                h = std::min(max_step, hh * factor);
            }
            if (h < mission * 1e-14) throw NumericalError("step size underflow during transient solve");
        }
        tr.times.push_back(t);
        tr.probabilities.emplace_back(y.begin(), y.begin() + k);
    }
    tr.final_probability.assign(y.begin(), y.begin() + k);
    tr.occupancy.assign(y.begin() + k, y.end());
    return tr;
}

}  // namespace

Trajectory transient_solve(const MarkovSpec& spec, double mission, double step) {
    if (!(step > 0.0)) throw ParameterError("step must be positive");
    if (!(mission > 0.0)) throw ParameterError("mission must be positive");
    if (auto v = spec.generator_violation(); !v.empty()) throw ParameterError(v);
    Trajectory coarse = integrate(spec, mission, step);
    const Trajectory fine = integrate(spec, mission, step / 2);
    double diff = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        diff = std::max(diff, std::abs(coarse.final_probability[i] - fine.final_probability[i]));
        diff = std::max(diff, std::abs(coarse.occupancy[i] - fine.occupancy[i]) / mission);
    }
    if (diff > 1e-8) {
        std::ostringstream os;
        os << "step-doubling check failed: difference " << diff << " with step " << step;
        throw NumericalError(os.str());
    }
    Trajectory out = fine;
    out.doubling_difference = diff;
    return out;
}

MarkovMetrics markov_metrics(const MarkovSpec& spec, const Trajectory& tr, double usable_bytes, double mission) {
    if (!(usable_bytes > 0.0) || !(mission > 0.0)) throw ParameterError("usable capacity and mission must be positive");
    if (tr.occupancy.size() != spec.size()) throw ParameterError("trajectory does not match the model");
    MarkovMetrics m;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        m.nomdu += tr.occupancy[i] * spec.du_fraction[i] / mission;
        const double lost = tr.final_probability[i] * spec.dl_fraction[i];
        (i == MarkovSpec::DL_FF ? m.nomdl_ddf : m.nomdl_lse) += lost;
    }
    for (const auto& lt : spec.loss_transitions) m.nomdl_lse += tr.occupancy[lt.from] * lt.rate * lt.fraction;
    m.nomdl = m.nomdl_ddf + m.nomdl_lse;
    return m;
}

}  // namespace raidsim
