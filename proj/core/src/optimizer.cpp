#include "ckn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "ckn/errors.hpp"
#include "ckn/special.hpp"

namespace ckn {

namespace {

constexpr double kGoldenRatio = 0.61803398874989484820;

// Golden-section minimization on [lo, hi]; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, int iters) {
    double x1 = hi - kGoldenRatio * (hi - lo);
    double x2 = lo + kGoldenRatio * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGoldenRatio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGoldenRatio * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Plain Nelder-Mead in 2-D with shrink restarts; enough for the flat family
// landscape where degenerate simplices are the norm.
template <class F>
std::pair<std::array<double, 2>, double> nelder_mead_2d(F&& f, std::array<double, 2> start,
                                                        double scale, int max_iters,
                                                        double f_tol, int restarts,
                                                        int* used_iters) {
    using Point = std::array<double, 2>;
    auto best_point = start;
    double best_value = f(start);
    int iters = 0;

    for (int attempt = 0; attempt <= restarts; ++attempt) {
        Point p0 = best_point;
        std::array<Point, 3> simplex{p0, {p0[0] + scale, p0[1]}, {p0[0], p0[1] + scale}};
        std::array<double, 3> values{f(simplex[0]), f(simplex[1]), f(simplex[2])};

        for (; iters < max_iters; ++iters) {
            std::array<int, 3> order{0, 1, 2};
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return values[a] < values[b]; });
            const int lo = order[0], mid = order[1], hi = order[2];
            if (std::fabs(values[hi] - values[lo]) <=
                f_tol * (std::fabs(values[lo]) + 1e-300))
                break;

            const Point centroid{0.5 * (simplex[lo][0] + simplex[mid][0]),
                                 0.5 * (simplex[lo][1] + simplex[mid][1])};
            auto blend = [&](double t) {
                return Point{centroid[0] + t * (simplex[hi][0] - centroid[0]),
                             centroid[1] + t * (simplex[hi][1] - centroid[1])};
            };
            const Point reflected = blend(-1.0);
            const double fr = f(reflected);
            if (fr < values[lo]) {
                const Point expanded = blend(-2.0);
                const double fe = f(expanded);
                simplex[hi] = fe < fr ? expanded : reflected;
                values[hi] = std::min(fe, fr);
            } else if (fr < values[mid]) {
                simplex[hi] = reflected;
                values[hi] = fr;
            } else {
                const Point contracted = blend(0.5);
                const double fc = f(contracted);
                if (fc < values[hi]) {
                    simplex[hi] = contracted;
                    values[hi] = fc;
                } else {
                    for (int j : {mid, hi}) {
                        simplex[j] = {0.5 * (simplex[j][0] + simplex[lo][0]),
                                      0.5 * (simplex[j][1] + simplex[lo][1])};
                        values[j] = f(simplex[j]);
                    }
                }
            }
        }
        const int arg = static_cast<int>(std::min_element(values.begin(), values.end()) -
                                         values.begin());
        if (values[arg] < best_value) {
            best_value = values[arg];
            best_point = simplex[arg];
        }
        scale *= 0.25;
    }
    *used_iters = iters;
    return {best_point, best_value};
}

double quotient_of_family_member(const RadialMeasure& model, const CknParams& params,
                                 double amplitude, double b, const QuadConfig& quad) {
    // A (1 + B t^kappa)^{-e} = A B^{-e} (1/B + t^kappa)^{-e}
    const double e = to_double((params.p - Rational(1)) / (params.q - params.p));
    const RadialProfile profile =
        RadialProfile::extremal(params, 1.0 / b, amplitude * std::pow(b, -e));
    return ckn_quotient(weighted_norms(model, params, profile, quad), params);
}

}  // namespace

MinimizeResult minimize_family(const RadialMeasure& model, const CknParams& params,
                               const FamilySpec& family, const MinimizeConfig& cfg,
                               const QuadConfig& quad) {
    if (family.amplitudes.empty() || family.b_values.empty())
        throw InvalidParams("minimize_family: empty probe set");

    MinimizeResult result(RadialProfile::extremal(params, 1.0));
    double best = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    double best_a = 1.0, best_b = 1.0;
    // history tracks the running best, so it stays non-increasing across
    // probes and simplex restarts alike.
    auto record = [&result](double q) {
        result.history.push_back(result.history.empty() ? q
                                                        : std::min(result.history.back(), q));
    };
    for (double amplitude : family.amplitudes) {
        for (double b : family.b_values) {
            const double q = quotient_of_family_member(model, params, amplitude, b, quad);
            result.probes.push_back({amplitude, b, q});
            record(q);
            if (q < best) {
                best = q;
                best_a = amplitude;
                best_b = b;
            }
            worst = std::max(worst, q);
        }
    }
    result.flatness = (worst - best) / best;

    int iters = static_cast<int>(result.probes.size());
    switch (cfg.method) {
        case MinimizeMethod::simplex: {
            auto f = [&](std::array<double, 2> x) {
                ++iters;
                const double q = quotient_of_family_member(model, params, std::exp(x[0]),
                                                           std::exp(x[1]), quad);
                record(q);
                return q;
            };
            int used = 0;
            auto [point, value] = nelder_mead_2d(
                f, {std::log(best_a), std::log(best_b)}, 0.5, cfg.max_iters, cfg.f_tol, 3, &used);
            if (value < best) {
                best = value;
                best_a = std::exp(point[0]);
                best_b = std::exp(point[1]);
            }
            break;
        }
        case MinimizeMethod::golden_section:
        case MinimizeMethod::coordinate_descent: {
            // B is the only direction that can matter; A cancels exactly.
            const auto [lo, hi] = std::minmax_element(family.b_values.begin(),
                                                      family.b_values.end());
            auto f = [&](double log_b) {
                ++iters;
                const double q =
                    quotient_of_family_member(model, params, best_a, std::exp(log_b), quad);
                record(q);
                return q;
            };
            auto [log_b, value] =
                golden_section(f, std::log(*lo) - 0.7, std::log(*hi) + 0.7, 40);
            if (value < best) {
                best = value;
                best_b = std::exp(log_b);
            }
            break;
        }
    }

    result.best_quotient = best;
    const double e = to_double((params.p - Rational(1)) / (params.q - params.p));
    result.best_profile =
        RadialProfile::extremal(params, 1.0 / best_b, best_a * std::pow(best_b, -e));
    result.iterations = iters;
    result.converged = true;
    result.seed = 0;
    if (!(best > 0.0) || !std::isfinite(best))
        throw NonConvergence("minimize_family: quotient did not evaluate to a positive number");
    return result;
}

namespace {

// Incremental evaluator: the three norms as sums of per-segment integrals,
// so a single-knot change only touches the two adjacent segments.
class GridQuotient {
  public:
    GridQuotient(const RadialMeasure& model, const CknParams& params, std::vector<double> knots,
                 std::vector<double> values)
        : model_(model),
          knots_(std::move(knots)),
          values_(std::move(values)),
          with_q_(params.q_term_active()) {
        n_omega_n_ = params.n * unit_ball_volume(params.n);
        p_ = params.p_d();
        q_ = params.q_d();
        r_ = params.r_d();
        a_ = params.a_d();
        w_r_ = to_double(params.gamma * params.r) + params.n - 1.0;
        w_g_ = to_double(params.alpha * params.p) + params.n - 1.0;
        const size_t segs = knots_.size() - 1;
        seg_r_.assign(segs, 0.0);
        seg_q_.assign(segs, 0.0);
        seg_g_.assign(segs, 0.0);
        for (size_t j = 0; j < segs; ++j) recompute_segment(j);
        sum_all();
    }

    size_t knot_count() const { return knots_.size(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }

    double quotient() const {
        if (!(tot_r_ > 0.0)) throw DegenerateProfile("grid quotient: r-norm vanished");
        double v = std::pow(tot_g_, a_ / p_) / std::pow(tot_r_, 1.0 / r_);
        if (with_q_) v *= std::pow(tot_q_, (1.0 - a_) / q_);
        return v;
    }

    // Quotient if values_[i] were set to v; does not commit.
    double trial(size_t i, double v) {
        const double saved = values_[i];
        values_[i] = v;
        double tr = tot_r_, tq = tot_q_, tg = tot_g_;
        for (size_t j : affected(i)) {
            tr -= seg_r_[j];
            tq -= seg_q_[j];
            tg -= seg_g_[j];
            const auto [cr, cq, cg] = segment(j);
            tr += cr;
            tq += cq;
            tg += cg;
        }
        values_[i] = saved;
        if (!(tr > 0.0)) return std::numeric_limits<double>::infinity();
        double out = std::pow(tg, a_ / p_) / std::pow(tr, 1.0 / r_);
        if (with_q_) out *= std::pow(tq, (1.0 - a_) / q_);
        return out;
    }

    void commit(size_t i, double v) {
        values_[i] = v;
        for (size_t j : affected(i)) recompute_segment(j);
        sum_all();  // fresh sums kill incremental drift
    }

    // Quotient for a full candidate vector; does not touch the committed state.
    double quotient_for(const std::vector<double>& candidate) const {
        double tr = 0.0, tq = 0.0, tg = 0.0;
        for (size_t j = 0; j + 1 < knots_.size(); ++j) {
            const auto [cr, cq, cg] = segment_for(j, candidate[j], candidate[j + 1]);
            tr += cr;
            tq += cq;
            tg += cg;
        }
        if (!(tr > 0.0)) return std::numeric_limits<double>::infinity();
        double out = std::pow(tg, a_ / p_) / std::pow(tr, 1.0 / r_);
        if (with_q_) out *= std::pow(tq, (1.0 - a_) / q_);
        return out;
    }

    void set_values(const std::vector<double>& candidate) {
        values_ = candidate;
        for (size_t j = 0; j + 1 < knots_.size(); ++j) recompute_segment(j);
        sum_all();
    }

  private:
    std::vector<size_t> affected(size_t i) const {
        std::vector<size_t> out;
        if (i > 0) out.push_back(i - 1);
        if (i + 1 < knots_.size()) out.push_back(i);
        return out;
    }

    std::tuple<double, double, double> segment(size_t j) const {
        return segment_for(j, values_[j], values_[j + 1]);
    }

    std::tuple<double, double, double> segment_for(size_t j, double ua, double ub) const {
        const double a = knots_[j];
        const double b = knots_[j + 1];
        const double da = model_.relative_density(a);
        const double db = model_.relative_density(b);
        const double cr = n_omega_n_ * power_segment_integral(w_r_, r_, a, b, ua, ub, da, db);
        const double cq =
            with_q_ ? n_omega_n_ * power_segment_integral(w_r_, q_, a, b, ua, ub, da, db) : 0.0;
        double cg = 0.0;
        if (ub != ua) {
            const double slope = (ub - ua) / (b - a);
            cg = n_omega_n_ * std::pow(std::fabs(slope), p_) *
                 power_weight_integral(w_g_, a, b, da, db);
        }
        return {cr, cq, cg};
    }

    void recompute_segment(size_t j) {
        const auto [cr, cq, cg] = segment(j);
        seg_r_[j] = cr;
        seg_q_[j] = cq;
        seg_g_[j] = cg;
    }

    void sum_all() {
        tot_r_ = tot_q_ = tot_g_ = 0.0;
        for (size_t j = 0; j < seg_r_.size(); ++j) {
            tot_r_ += seg_r_[j];
            tot_q_ += seg_q_[j];
            tot_g_ += seg_g_[j];
        }
    }

    const RadialMeasure& model_;
    std::vector<double> knots_;
    std::vector<double> values_;
    bool with_q_;
    double n_omega_n_ = 0, p_ = 0, q_ = 0, r_ = 0, a_ = 0, w_r_ = 0, w_g_ = 0;
    std::vector<double> seg_r_, seg_q_, seg_g_;
    double tot_r_ = 0, tot_q_ = 0, tot_g_ = 0;
};

std::vector<double> grid_knots(const MinimizeConfig& cfg) {
    if (cfg.grid_size < 16) throw InvalidParams("minimize_grid: grid_size must be >= 16");
    if (!(cfg.support_radius > 0.0)) throw InvalidParams("minimize_grid: bad support radius");
    std::vector<double> knots;
    knots.reserve(static_cast<size_t>(cfg.grid_size) + 1);
    knots.push_back(0.0);
    const auto logs = log_grid(cfg.support_radius * 1e-4, cfg.support_radius, cfg.grid_size);
    knots.insert(knots.end(), logs.begin(), logs.end());
    return knots;
}

std::vector<double> initial_values(const CknParams& params, const MinimizeConfig& cfg,
                                   const std::vector<double>& knots) {
    std::vector<double> values(knots.size());
    if (cfg.init == GridInit::truncated_extremal) {
        const int k = std::max(1, static_cast<int>(cfg.support_radius) - 1);
        const RadialProfile truncated = RadialProfile::cutoff(params, 1.0, k);
        for (size_t i = 0; i < knots.size(); ++i) values[i] = truncated.value(knots[i]);
    } else {
        std::mt19937 rng(cfg.seed);
        std::uniform_real_distribution<double> unif(0.1, 1.0);
        for (double& v : values) v = unif(rng);
    }
    values.back() = 0.0;  // compact support
    return values;
}

struct SweepOutcome {
    int sweeps = 0;
    bool converged = false;
};

// Alternating-direction coordinate sweeps with a pattern (extrapolation)
// move after each pass. Appends the per-sweep quotient to `history`, which
// stays non-increasing.
SweepOutcome run_sweeps(GridQuotient& state, double f_tol, int budget,
                        std::vector<double>& history) {
    SweepOutcome outcome;
    double current = state.quotient();
    const size_t last = state.knot_count() - 1;  // pinned at zero
    std::vector<double> candidate(state.values().size());
    std::vector<double> two_sweeps_ago;

    for (; outcome.sweeps < budget; ++outcome.sweeps) {
        const int sweep = outcome.sweeps;
        const std::vector<double> before_sweep = state.values();
        const double vmax =
            std::max(1e-300, *std::max_element(state.values().begin(), state.values().end()));
        // alternate sweep direction so corrections propagate both ways
        for (size_t step = 0; step < last; ++step) {
            const size_t i = (sweep % 2 == 0) ? step : last - 1 - step;
            const double v = state.values()[i];
            const double right = i + 1 < state.values().size() ? state.values()[i + 1] : 0.0;
            const double neighbor = std::max(i > 0 ? state.values()[i - 1] : 0.0, right);
            // global search on [0, hi]; widen when the optimum presses the lid
            double hi = std::max({2.0 * v, 1.5 * neighbor, 1e-3 * vmax});
            std::pair<double, double> best{v, current};
            for (int widen = 0; widen < 4; ++widen) {
                best = golden_section([&](double x) { return state.trial(i, x); }, 0.0, hi, 32);
                if (best.first < 0.95 * hi) break;
                hi *= 3.0;
            }
            if (best.second < current) {
                // the committed recomputation can round the other way; roll
                // back rather than let the history tick upward
                state.commit(i, best.first);
                const double updated = state.quotient();
                if (updated <= current) {
                    current = updated;
                } else {
                    state.commit(i, v);
                }
            }
        }

        // pattern moves: extrapolate along the one-sweep displacement and
        // along the two-sweep displacement (where coordinate zig-zag cancels);
        // these carry the slow collective mode that single-coordinate steps
        // crawl along
        const std::vector<double>* anchors[2] = {&before_sweep,
                                                 two_sweeps_ago.empty() ? nullptr
                                                                        : &two_sweeps_ago};
        for (const auto* anchor : anchors) {
            if (!anchor) continue;
            const std::vector<double>& base = *anchor;
            const std::vector<double> post_sweep = state.values();
            double displacement = 0.0;
            for (size_t i = 0; i < last; ++i)
                displacement += std::fabs(post_sweep[i] - base[i]);
            if (displacement == 0.0) continue;
            auto at_beta = [&](double beta) {
                for (size_t i = 0; i < candidate.size(); ++i)
                    candidate[i] =
                        std::max(0.0, post_sweep[i] + beta * (post_sweep[i] - base[i]));
                candidate.back() = 0.0;
                return state.quotient_for(candidate);
            };
            const auto [beta, f_beta] = golden_section(at_beta, 0.0, 16.0, 28);
            if (f_beta < current) {
                at_beta(beta);
                state.set_values(candidate);
                const double updated = state.quotient();
                if (updated <= current) {
                    current = updated;
                } else {
                    state.set_values(post_sweep);
                }
            }
        }
        two_sweeps_ago = before_sweep;

        const double swept = state.quotient();
        const double improvement = history.back() - swept;
        history.push_back(swept);
        current = swept;
        if (std::getenv("CKN_OPT_TRACE"))
            std::fprintf(stderr, "sweep %d (%zu knots): f=%.12g improvement=%.3e rel=%.3e\n",
                         sweep, state.knot_count(), swept, improvement, improvement / swept);
        if (improvement <= f_tol * std::fabs(swept)) {
            outcome.converged = true;
            ++outcome.sweeps;
            break;
        }
    }
    return outcome;
}

// Knot ladder for the multiscale descent: every stride-th interior knot,
// always keeping the origin and the support end.
std::vector<double> subsample_knots(const std::vector<double>& knots, size_t stride) {
    std::vector<double> out;
    out.push_back(knots.front());
    for (size_t i = 1; i + 1 < knots.size(); i += stride) out.push_back(knots[i]);
    if (out.back() != knots.back()) out.push_back(knots.back());
    return out;
}

std::vector<double> interp_values(const std::vector<double>& coarse_knots,
                                  const std::vector<double>& coarse_values,
                                  const std::vector<double>& fine_knots) {
    std::vector<double> out(fine_knots.size());
    for (size_t i = 0; i < fine_knots.size(); ++i) {
        const double t = fine_knots[i];
        const auto it =
            std::upper_bound(coarse_knots.begin(), coarse_knots.end(), t);
        if (it == coarse_knots.begin()) {
            out[i] = coarse_values.front();
        } else if (it == coarse_knots.end()) {
            out[i] = coarse_values.back();
        } else {
            const size_t j = static_cast<size_t>(it - coarse_knots.begin()) - 1;
            const double w = (t - coarse_knots[j]) / (coarse_knots[j + 1] - coarse_knots[j]);
            out[i] = coarse_values[j] + w * (coarse_values[j + 1] - coarse_values[j]);
        }
    }
    out.back() = 0.0;
    return out;
}

}  // namespace

MinimizeResult minimize_grid(const RadialMeasure& model, const CknParams& params,
                             const MinimizeConfig& cfg, const QuadConfig& /*quad*/) {
    const std::vector<double> knots = grid_knots(cfg);

    MinimizeResult result(RadialProfile::extremal(params, 1.0));
    result.seed = cfg.init == GridInit::random ? cfg.seed : 0;

    int sweeps_used = 0;
    bool converged = false;

    if (cfg.init == GridInit::truncated_extremal) {
        // already near-optimal: refine on the full grid directly
        GridQuotient state(model, params, knots, initial_values(params, cfg, knots));
        result.history.push_back(state.quotient());
        const SweepOutcome outcome =
            run_sweeps(state, cfg.f_tol, cfg.max_iters, result.history);
        sweeps_used = outcome.sweeps;
        converged = outcome.converged;
        result.best_quotient = result.history.back();
        result.best_profile = RadialProfile::sampled(state.knots(), state.values(), true);
    } else {
        // random start: descend a knot ladder so the global shape settles on
        // a few strongly coupled unknowns before the fine grid refines it.
        // Prolongation is piecewise linear, hence exact for the profile, and
        // the history stays monotone across levels.
        std::vector<size_t> strides;
        for (size_t stride = 1; (knots.size() - 2) / stride >= 8; stride *= 2)
            strides.push_back(stride);
        std::reverse(strides.begin(), strides.end());  // coarse to fine

        std::vector<double> level_knots = subsample_knots(knots, strides.front());
        std::vector<double> level_values(level_knots.size());
        {
            std::mt19937 rng(cfg.seed);
            std::uniform_real_distribution<double> unif(0.1, 1.0);
            for (double& v : level_values) v = unif(rng);
            level_values.back() = 0.0;
        }

        std::vector<double> final_values;
        for (size_t level = 0; level < strides.size(); ++level) {
            GridQuotient state(model, params, level_knots, level_values);
            if (result.history.empty()) result.history.push_back(state.quotient());
            // coarse levels only set the global shape: cap their budget and
            // stop them early; the final level owns the real tolerance
            const bool final_level = level + 1 == strides.size();
            const int remaining = std::max(1, cfg.max_iters - sweeps_used);
            const int budget =
                final_level ? remaining : std::min(remaining, std::max(20, cfg.max_iters / 4));
            const double level_f_tol = final_level ? cfg.f_tol : std::max(cfg.f_tol, 1e-4);
            const SweepOutcome outcome =
                run_sweeps(state, level_f_tol, budget, result.history);
            sweeps_used += outcome.sweeps;
            converged = outcome.converged && final_level;

            if (level + 1 < strides.size()) {
                std::vector<double> next_knots = subsample_knots(knots, strides[level + 1]);
                level_values = interp_values(level_knots, state.values(), next_knots);
                level_knots = std::move(next_knots);
            } else {
                level_knots = state.knots();
                final_values = state.values();
            }
        }
        result.best_quotient = result.history.back();
        result.best_profile = RadialProfile::sampled(level_knots, final_values, true);
    }

    result.iterations = sweeps_used;
    result.converged = converged;
    if (!converged)
        throw NonConvergence("minimize_grid: " + std::to_string(cfg.max_iters) +
                             " sweeps without meeting f_tol");
    return result;
}

std::vector<PerturbationProbe> extremal_perturbations(const CknParams& params, int count,
                                                      double amplitude, const QuadConfig& quad) {
    const RadialMeasure euclid = RadialMeasure::euclidean(params.n);

    const double support = 100.0;
    std::vector<double> knots;
    knots.push_back(0.0);
    const auto logs = log_grid(support * 1e-5, support, 480);
    knots.insert(knots.end(), logs.begin(), logs.end());

    const RadialProfile truncated =
        RadialProfile::cutoff(params, 1.0, static_cast<int>(support) - 1);
    std::vector<double> base(knots.size());
    for (size_t i = 0; i < knots.size(); ++i) base[i] = truncated.value(knots[i]);
    base.back() = 0.0;

    const RadialProfile baseline = RadialProfile::sampled(knots, base, true);
    const double base_quotient = ckn_quotient(weighted_norms(euclid, params, baseline, quad), params);

    std::vector<PerturbationProbe> probes;
    probes.reserve(static_cast<size_t>(count));
    for (int s = 1; s <= count; ++s) {
        std::mt19937 rng(static_cast<unsigned>(s));
        std::uniform_real_distribution<double> center_dist(std::log(1e-2), std::log(10.0));
        std::uniform_real_distribution<double> width_dist(0.2, 0.6);
        const double log_center = center_dist(rng);
        const double width = width_dist(rng);

        std::vector<double> bumped = base;
        for (size_t i = 1; i + 1 < knots.size(); ++i) {
            const double z = (std::log(knots[i]) - log_center) / width;
            bumped[i] += amplitude * std::exp(-0.5 * z * z);
        }
        const RadialProfile perturbed = RadialProfile::sampled(knots, bumped, true);
        const double q = ckn_quotient(weighted_norms(euclid, params, perturbed, quad), params);
        probes.push_back({static_cast<unsigned>(s), q - base_quotient});
    }
    return probes;
}

BestConstantReport best_constant(const RadialMeasure& model, const CknParams& params,
                                 const MinimizeConfig& cfg, const QuadConfig& quad) {
    const MinimizeResult family = minimize_family(model, params, FamilySpec{}, cfg, quad);

    std::vector<double> radii = log_grid(1e-3, 1e3, 121);
    if (model.kind() == RadialMeasure::Kind::tabulated)
        for (double t : model.knots())
            if (t > 1e-3 && t < 1e3) radii.push_back(t);
    std::sort(radii.begin(), radii.end());

    BestConstantReport report;
    report.c_quotient = 1.0 / family.best_quotient;
    report.flatness = family.flatness;
    const double inf_density = volume_density_infimum(model, radii);
    report.c_volume_route =
        copt_quadrature(params, quad) * std::pow(inf_density, -params.a_d() / params.n);
    return report;
}

}  // namespace ckn
