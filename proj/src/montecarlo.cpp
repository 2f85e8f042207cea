#include "chargelimit/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "chargelimit/error.hpp"
#include "chargelimit/noise.hpp"

namespace chargelimit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_key(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

// Wilson score interval half-width.
double wilson_half_width(double p, double n) {
    constexpr double z = 1.959963984540054;
    const double z2 = z * z;
    return z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
    double skewness = 0.0;
    double kurtosis = 3.0;
};

Moments moments(const std::vector<double>& x) {
    Moments m;
    const double n = static_cast<double>(x.size());
    double sum = 0.0;
    for (double v : x) sum += v;
    m.mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - m.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    if (x.size() > 1) m.stddev = std::sqrt(m2 / (n - 1.0));
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 > 0.0) {
        m.skewness = m3 / std::pow(m2, 1.5);
        m.kurtosis = m4 / (m2 * m2);
    }
    return m;
}

void draw_range(const SimConfig& cfg, TrialSamples& s, std::uint64_t begin, std::uint64_t end) {
    const double mean_counts = s.lambda / cfg.fano;
    for (std::uint64_t i = begin; i < end; ++i) {
        std::mt19937_64 gen(trial_key(cfg.seed, i));
        double open = 0.0;
        if (s.lambda > 0.0) {
            if (s.gaussian_fallback) {
                std::normal_distribution<double> approx(s.lambda, std::sqrt(cfg.fano * s.lambda));
                open = approx(gen);
            } else {
                std::poisson_distribution<long long> counts(mean_counts);
                open = cfg.fano * static_cast<double>(counts(gen));
            }
        }
        double blocked = 0.0;
        if (s.thermal_sigma > 0.0) {
            std::normal_distribution<double> thermal(0.0, s.thermal_sigma);
            open += thermal(gen);
            blocked += thermal(gen);
        }
        s.open[i] = open;
        s.blocked[i] = blocked;
    }
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.trials < 1) throw DomainError("trials must be >= 1");
    if (!(cfg.bandwidth > 0.0) || !std::isfinite(cfg.bandwidth))
        throw DomainError("bandwidth must be > 0 Hz");
    if (!(cfg.on_current >= 0.0) || !std::isfinite(cfg.on_current))
        throw DomainError("on-state current must be >= 0 A");
    if (!(cfg.temperature >= 0.0)) throw DomainError("temperature must be >= 0 K");
    if (!(cfg.conductance >= 0.0)) throw DomainError("conductance must be >= 0 S");
    if (!(cfg.threshold >= 0.0)) throw DomainError("threshold must be >= 0 electrons");
    if (!(cfg.fano > 0.0)) throw DomainError("Fano factor must be > 0");
}

TrialSamples draw_samples(const SimConfig& cfg) {
    validate(cfg);
    const auto& k = kConstants;
    TrialSamples s;
    s.window = 1.0 / (2.0 * cfg.bandwidth);
    s.lambda = cfg.on_current * s.window / k.e;
    s.thermal_sigma =
        std::sqrt(4.0 * k.k_B * cfg.temperature * cfg.conductance * cfg.bandwidth) * s.window / k.e;
    s.gaussian_fallback = s.lambda / cfg.fano > kPoissonLimit;
    s.open.resize(cfg.trials);
    s.blocked.resize(cfg.trials);

    const std::uint64_t workers = std::clamp<std::uint64_t>(cfg.threads, 1, cfg.trials);
    if (workers == 1) {
        draw_range(cfg, s, 0, cfg.trials);
        return s;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (cfg.trials + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(cfg.trials, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&cfg, &s, begin, end] { draw_range(cfg, s, begin, end); });
    }
    return s;
}

SimOutcome summarize(const SimConfig& cfg, const TrialSamples& samples) {
    SimOutcome o{};
    o.trials = cfg.trials;
    o.seed_used = cfg.seed;
    o.generator = kGeneratorId;
    o.window = samples.window;
    o.lambda = samples.lambda;
    o.thermal_sigma = samples.thermal_sigma;
    o.threshold = cfg.threshold;
    o.gaussian_fallback = samples.gaussian_fallback;

    const Moments m = moments(samples.open);
    const double n = static_cast<double>(cfg.trials);
    o.sample_mean = m.mean;
    o.sample_stddev = m.stddev;
    if (m.stddev > 0.0) {
        const double r = m.mean / m.stddev;
        o.empirical_snr = r;
        // Var(mean/sd) ~ [1 + r^2 (kurt - 1)/4 - r skew] / n
        const double var = (1.0 + r * r * (m.kurtosis - 1.0) / 4.0 - r * m.skewness) / n;
        o.snr_stderr = std::sqrt(std::max(var, 0.0));
    } else {
        o.empirical_snr = m.mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        o.snr_stderr = 0.0;
    }

    OperatingPoint op;
    op.current = cfg.on_current;
    op.conductance = cfg.conductance;
    op.bias = cfg.conductance > 0.0 ? cfg.on_current / cfg.conductance : 0.0;
    op.temperature = cfg.temperature;
    op.bandwidth = cfg.bandwidth;
    op.fano = cfg.fano;
    // G * (I / G) can miss I by an ulp; validate() tolerates that.
    o.analytic_snr = snr(op);

    std::uint64_t missed = 0, false_open = 0;
    for (double q : samples.open)
        if (!(q >= cfg.threshold)) ++missed;
    for (double q : samples.blocked)
        if (q >= cfg.threshold) ++false_open;
    o.err_open = static_cast<double>(missed) / n;
    o.err_blocked = static_cast<double>(false_open) / n;
    o.balanced_err = 0.5 * (o.err_open + o.err_blocked);

    o.ci95.snr = 1.959963984540054 * o.snr_stderr;
    o.ci95.err_open = wilson_half_width(o.err_open, n);
    o.ci95.err_blocked = wilson_half_width(o.err_blocked, n);
    o.ci95.balanced_err =
        0.5 * std::hypot(o.ci95.err_open, o.ci95.err_blocked);

    o.within_3sigma = std::abs(o.empirical_snr - o.analytic_snr) <= 3.0 * o.snr_stderr;
    return o;
}

SimOutcome simulate_detection(const SimConfig& cfg) { return summarize(cfg, draw_samples(cfg)); }

std::vector<ThresholdPoint> threshold_scan(const SimConfig& cfg, std::span<const double> thresholds) {
    const TrialSamples samples = draw_samples(cfg);
    std::vector<ThresholdPoint> out;
    out.reserve(thresholds.size());
    const double n = static_cast<double>(cfg.trials);
    for (double t : thresholds) {
        if (!(t >= 0.0)) throw DomainError("threshold must be >= 0 electrons");
        const auto missed = std::count_if(samples.open.begin(), samples.open.end(),
                                          [t](double q) { return !(q >= t); });
        const auto false_open = std::count_if(samples.blocked.begin(), samples.blocked.end(),
                                              [t](double q) { return q >= t; });
        ThresholdPoint p{t, static_cast<double>(missed) / n, static_cast<double>(false_open) / n, 0.0};
        p.balanced_err = 0.5 * (p.err_open + p.err_blocked);
        out.push_back(p);
    }
    return out;
}

DeviceValidation validate_device(const DeviceSpec& device, double bandwidth, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads) {
    EvalOptions options;
    options.bandwidth = bandwidth;
    DeviceValidation v{};
    v.kind = device.kind();
    v.bandwidth = bandwidth;
    v.analytic = evaluate(device, options);
    v.closed_form_snr = v.analytic.snr;

    SimConfig cfg;
    cfg.on_current = v.analytic.transport.current;
    cfg.conductance = v.analytic.transport.conductance;
    cfg.temperature = 0.0;
    cfg.bandwidth = bandwidth;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = threads;
    v.outcome = simulate_detection(cfg);
    v.pass = v.outcome.within_3sigma;
    if (v.outcome.lambda < 10.0)
        v.warnings.push_back("mean count per window is below 10; amplitude SNR and error rate "
                             "diverge as figures of merit in this regime");
    return v;
}

}  // namespace chargelimit
