#include "ascal/brownian.hpp"

#include "ascal/fields.hpp"

#include <cmath>
#include <future>
#include <thread>

namespace ascal {

std::uint64_t CounterRng::mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t counter) const {
    const std::uint64_t h = mix(mix(seed ^ mix(stream)) + counter);
    // top 53 bits, offset so the value is strictly inside (0,1)
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::uint64_t CounterRng::derive(std::uint64_t salt) const {
    return mix(seed ^ mix(salt ^ 0xa02bdbf7bb3c0a7ULL));
}

BrownianPath sample_path(double dt, double horizon, std::uint64_t seed) {
    if (!(dt > 0) || !(horizon >= dt))
        throw ContractViolation("sample_path: need dt > 0 and horizon >= dt");
    const auto n = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
    BrownianPath p;
    p.dt = dt;
    p.horizon = horizon;
    p.seed = seed;
    p.level = 0;
    p.values.resize(n + 1);
    p.values[0] = 0.0;
    const CounterRng rng{seed, 0};
    const double sqrt_dt = std::sqrt(dt);
    for (std::size_t i = 0; i < n; ++i)
        p.values[i + 1] = p.values[i] + sqrt_dt * rng.normal(i);
    return p;
}

BrownianPath refine_path(const BrownianPath& path) {
    BrownianPath out;
    out.dt = path.dt / 2;
    out.horizon = path.horizon;
    out.seed = path.seed;
    out.level = path.level + 1;
    out.values.resize(2 * path.steps() + 1);
    // stream index > 0 identifies the refinement level
    const CounterRng rng{path.seed, static_cast<std::uint64_t>(out.level)};
    const double half_sd = std::sqrt(path.dt / 4.0);
    for (std::size_t i = 0; i < path.steps(); ++i) {
        const double a = path.values[i], b = path.values[i + 1];
        out.values[2 * i] = a;
        out.values[2 * i + 1] = 0.5 * (a + b) + half_sd * rng.normal(i);
    }
    out.values.back() = path.values.back();
    return out;
}

void EventSpec::validate() const {
    if (!(alpha > 0) || !(beta > 0) || !(nu > 0))
        throw ContractViolation("event: alpha, beta, nu must be positive");
}

EventMembership event_membership(const BrownianPath& path, const EventSpec& e, bool bridge) {
    EventMembership result;
    const CounterRng aux{path.seed, 0xb71d6e5ULL + static_cast<std::uint64_t>(path.level)};
    double prev_dist = e.alpha;  // W(0) = 0
    for (std::size_t i = 1; i < path.values.size(); ++i) {
        const double t = static_cast<double>(i) * path.dt;
        const double dist = e.alpha + e.beta * t - e.nu * path.values[i];
        if (dist < 0) {
            result.in_event = false;
            result.first_violation = t;
            return result;
        }
        if (bridge) {
            const double p_cross =
                std::exp(-2.0 * prev_dist * dist / (e.nu * e.nu * path.dt));
            if (aux.uniform(i) < p_cross) {
                result.in_event = false;
                result.first_violation = t;
                return result;
            }
        }
        prev_dist = dist;
    }
    return result;
}

double event_probability(const EventSpec& e) {
    return 1.0 - std::exp(-2.0 * e.alpha * e.beta / (e.nu * e.nu));
}

McEventResult mc_event_probability(const EventSpec& e, std::uint64_t n_paths, double dt,
                                   double horizon, bool bridge, std::uint64_t seed) {
    e.validate();
    McEventResult res;
    res.n_paths = n_paths;
    res.truncation_bound =
        std::exp(-2.0 * (e.alpha + e.beta * horizon) * e.beta / (e.nu * e.nu));

    const CounterRng root{seed, 0};
    auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const BrownianPath p = sample_path(dt, horizon, root.derive(i));
            if (event_membership(p, e, bridge).in_event) ++hits;
        }
        return hits;
    };

    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || n_paths < 1024) {
        res.n_in_event = count_range(0, n_paths);
    } else {
        std::vector<std::future<std::uint64_t>> parts;
        const std::uint64_t chunk = (n_paths + workers - 1) / workers;
        for (std::uint64_t lo = 0; lo < n_paths; lo += chunk)
            parts.push_back(std::async(std::launch::async, count_range, lo,
                                       std::min(lo + chunk, n_paths)));
        for (auto& f : parts) res.n_in_event += f.get();
    }

    const double p_hat = static_cast<double>(res.n_in_event) / static_cast<double>(n_paths);
    res.estimate = p_hat;
    res.std_error = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_paths));
    return res;
}

}  // namespace ascal
