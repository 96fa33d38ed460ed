// SPDX-License-Identifier: Apache-2.0
#include "splitrx/mi_estimator.hpp"

#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "splitrx/density.hpp"
#include "splitrx/errors.hpp"
#include "splitrx/special.hpp"

namespace splitrx {

namespace {

constexpr std::uint64_t kMixtureStream = 0x6d69'7874ULL;

double log_cn(cplx y, cplx mean, double var) {
    return -std::log(M_PI * var) - std::norm(y - mean) / var;
}

// Evaluates one outer-sample term log2 f(y|x) - log2 f(y) for a fixed
// scenario. Holds whatever quadrature state the chosen method needs.
class SummandEvaluator {
public:
    SummandEvaluator(const ChannelParams& params, SplittingRatio rho, const EstimatorConfig& cfg)
        : params_(params), rho_(rho), method_(cfg.method) {
        if (method_ == DensityMethod::collapsed)
            envelope_.emplace(cfg.quad_order);
        else
            hermite_.emplace(cfg.quad_order);
    }

    void set_mixture(std::vector<MixturePoint> m) { mixture_ = std::move(m); }

    double operator()(cplx x, cplx y1, double y2) const {
        const double nats = method_ == DensityMethod::collapsed ? collapsed(x, y1, y2)
                                                                : quadrature_mixture(x, y1, y2);
        if (!std::isfinite(nats)) throw NumericalError("non-finite mutual-information summand");
        return nats / kLn2;
    }

private:
    double amp() const { return std::sqrt(params_.power) * params_.h_mag; }

    double collapsed(cplx x, cplx y1, double y2) const {
        const NoiseProfile& nz = params_.noise;
        const double r = rho_.value();
        const double marginal_var = params_.signal_gain() + nz.sigma_a2;
        if (r == 1.0) {
            return log_cn(y1, amp() * x, nz.sigma_a2 + nz.sigma_cov2) -
                   log_cn(y1, 0.0, marginal_var + nz.sigma_cov2);
        }
        if (r == 0.0) {
            return log_envelope_kernel(y2, std::abs(amp() * x), nz.sigma_a2, 1.0, nz.sigma_rec2,
                                       *envelope_) -
                   log_envelope_kernel(y2, 0.0, marginal_var, 1.0, nz.sigma_rec2, *envelope_);
        }
        return log_pdf_pair_given_x_collapsed(y1, y2, x, params_, rho_, *envelope_) -
               log_pdf_pair_collapsed(y1, y2, params_, rho_, *envelope_);
    }

    // Log-density terms with the pure-noise coordinate dropped at the endpoints.
    double conditional_term(cplx y1, double y2, cplx x, cplx w) const {
        const double r = rho_.value();
        double t = 0.0;
        if (r > 0.0) t += log_pdf_y1_given_xw(y1, x, w, params_, rho_);
        if (r < 1.0) t += log_pdf_y2_given_xw(y2, x, w, params_, rho_);
        return t;
    }

    double quadrature_mixture(cplx x, cplx y1, double y2) const {
        const QuadratureRule& rule = *hermite_;
        const double sigma_a = std::sqrt(params_.noise.sigma_a2);
        LogSumExp cond;
        for (int i = 0; i < rule.order(); ++i)
            for (int j = 0; j < rule.order(); ++j)
                cond.add(rule.log_weights()[i] + rule.log_weights()[j] +
                         conditional_term(y1, y2, x, {sigma_a * rule.nodes()[i], sigma_a * rule.nodes()[j]}));
        LogSumExp marg;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& p : mixture_) {
            const double t = conditional_term(y1, y2, p.x, p.w);
            best = std::max(best, t);
            marg.add(t);
        }
        if (!(best > kLogUnderflow))
            throw NumericalError("every mixture term underflows; increase the mixture size");
        return (cond.value() - std::log(M_PI)) -
               (marg.value() - std::log(static_cast<double>(mixture_.size())));
    }

    ChannelParams params_;
    SplittingRatio rho_;
    DensityMethod method_;
    std::optional<EnvelopeQuadrature> envelope_;
    std::optional<QuadratureRule> hermite_;
    std::vector<MixturePoint> mixture_;
};

// Fills out[i] = f(i) for i in [0, n). Exceptions thrown inside the parallel
// loop are captured and the one from the lowest index is rethrown.
template <typename F>
void evaluate_all(std::vector<double>& out, bool parallel, F&& f) {
    const auto n = static_cast<std::int64_t>(out.size());
    std::exception_ptr error;
    std::int64_t error_index = n;
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(splitrx_estimator_error)
            if (i < error_index) {
                error_index = i;
                error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
}

double ordered_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

MiEstimate summarize(const std::vector<double>& batch_means, const EstimatorConfig& cfg) {
    const double mean = ordered_mean(batch_means);
    double ss = 0.0;
    for (double m : batch_means) ss += (m - mean) * (m - mean);
    const auto b = static_cast<double>(batch_means.size());
    return {mean, std::sqrt(ss / (b - 1.0) / b), cfg.fingerprint()};
}

MiEstimate run(const ChannelParams& params, SplittingRatio rho, const EstimatorConfig& cfg,
               bool parallel) {
    params.validate();
    cfg.validate();
    const std::size_t per_batch = cfg.n_outer / cfg.n_batches;
    SummandEvaluator eval(params, rho, cfg);
    std::vector<double> means(cfg.n_batches);
    std::vector<double> terms(per_batch);
    for (std::size_t b = 0; b < cfg.n_batches; ++b) {
        const std::uint64_t batch_seed = mix_seed(cfg.seed, b);
        const SampleBatch batch = sample_batch(params, rho, per_batch, batch_seed);
        if (cfg.method == DensityMethod::quadrature_mixture)
            eval.set_mixture(draw_mixture(params, cfg.l_mixture, mix_seed(batch_seed, kMixtureStream)));
        evaluate_all(terms, parallel,
                     [&](std::size_t i) { return eval(batch.x[i], batch.y1[i], batch.y2[i]); });
        means[b] = ordered_mean(terms);
    }
    return summarize(means, cfg);
}

}  // namespace

const char* to_string(DensityMethod m) {
    return m == DensityMethod::collapsed ? "collapsed" : "quadrature_mixture";
}

void EstimatorConfig::validate() const {
    if (n_batches < kMinBatches) throw std::invalid_argument("n_batches must be at least 8");
    if (n_outer == 0 || n_outer % n_batches != 0)
        throw std::invalid_argument("n_outer must be a positive multiple of n_batches");
    if (method == DensityMethod::quadrature_mixture) {
        if (quad_order < QuadratureRule::kMinOrder)
            throw std::invalid_argument("quad_order must be at least 8");
        if (l_mixture < 1000) throw std::invalid_argument("l_mixture must be at least 1000");
    } else if (quad_order < 1) {
        throw std::invalid_argument("quad_order must be positive");
    }
}

std::string EstimatorConfig::fingerprint() const {
    std::ostringstream os;
    os << "method=" << to_string(method) << ";n_outer=" << n_outer << ";l_mixture=" << l_mixture
       << ";quad_order=" << quad_order << ";n_batches=" << n_batches << ";seed=" << seed;
    return os.str();
}

MiEstimate estimate_mi(const ChannelParams& params, SplittingRatio rho, const EstimatorConfig& cfg) {
    return run(params, rho, cfg, true);
}

MiEstimate estimate_mi_serial(const ChannelParams& params, SplittingRatio rho,
                              const EstimatorConfig& cfg) {
    return run(params, rho, cfg, false);
}

MiEstimate estimate_mi_on_batch(const ChannelParams& params, SplittingRatio rho,
                                const SampleBatch& batch, const EstimatorConfig& cfg) {
    params.validate();
    EstimatorConfig local = cfg;
    local.n_outer = batch.n;
    local.validate();
    const std::size_t per_batch = batch.n / cfg.n_batches;
    SummandEvaluator eval(params, rho, cfg);
    std::vector<double> means(cfg.n_batches);
    std::vector<double> terms(per_batch);
    for (std::size_t b = 0; b < cfg.n_batches; ++b) {
        if (cfg.method == DensityMethod::quadrature_mixture)
            eval.set_mixture(draw_mixture(params, cfg.l_mixture,
                                          mix_seed(mix_seed(cfg.seed, b), kMixtureStream)));
        const std::size_t offset = b * per_batch;
        evaluate_all(terms, true, [&](std::size_t i) {
            const std::size_t k = offset + i;
            return eval(batch.x[k], batch.derotated_y1(k), batch.y2[k]);
        });
        means[b] = ordered_mean(terms);
    }
    return summarize(means, local);
}

std::uint64_t point_seed(std::uint64_t master, double rho) {
    return mix_seed(master, std::bit_cast<std::uint64_t>(rho));
}

std::vector<SweepPoint> sweep_rho(const ChannelParams& params, std::span<const double> grid,
                                  const EstimatorConfig& cfg) {
    if (grid.empty()) throw std::invalid_argument("rho grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw std::invalid_argument("rho grid values must lie in [0, 1]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::invalid_argument("rho grid must be strictly increasing");
    }
    std::vector<SweepPoint> out;
    out.reserve(grid.size());
    for (double rho : grid) {
        EstimatorConfig point = cfg;
        point.seed = point_seed(cfg.seed, rho);
        out.push_back({rho, estimate_mi(params, SplittingRatio(rho), point)});
    }
    return out;
}

}  // namespace splitrx
