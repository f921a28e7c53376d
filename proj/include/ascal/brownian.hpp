#ifndef ASCAL_BROWNIAN_HPP
#define ASCAL_BROWNIAN_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace ascal {

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so path sampling, bridge refinement and Monte Carlo batches are
// reproducible independent of evaluation order.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    static std::uint64_t mix(std::uint64_t z);
    double uniform(std::uint64_t counter) const;         // in (0,1)
    double normal(std::uint64_t counter) const;          // standard normal (Box-Muller)
    std::uint64_t derive(std::uint64_t salt) const;      // child seed
};

// One realization of W on the uniform grid t_i = i*dt, i = 0..floor(T/dt).
// level counts dyadic bridge refinements from the dt it was sampled at.
struct BrownianPath {
    double dt = 1e-3;
    double horizon = 1.0;
    std::uint64_t seed = 0;
    int level = 0;
    std::vector<double> values;

    std::size_t steps() const { return values.empty() ? 0 : values.size() - 1; }
    double value_at_index(std::size_t i) const { return values[i]; }
};

BrownianPath sample_path(double dt, double horizon, std::uint64_t seed);

// Halves dt by inserting Brownian-bridge midpoints; the coarse values are
// kept bit-for-bit, the midpoint noise comes from a level-specific stream of
// the same seed. Repeated refinement yields a consistent dyadic family.
BrownianPath refine_path(const BrownianPath& path);

struct EventSpec {
    double alpha = 1.0;
    double beta = 1.0;
    double nu = 1.0;

    void validate() const;
};

struct EventMembership {
    bool in_event = true;
    std::optional<double> first_violation;
};

// Checks alpha + beta*t - nu*W(t) >= 0 on the path grid. With bridge
// correction, each step additionally rejects with the Brownian-bridge
// crossing probability exp(-2 a_i a_{i+1} / (nu^2 dt)) of the linear barrier,
// using auxiliary uniforms derived from the path seed.
EventMembership event_membership(const BrownianPath& path, const EventSpec& e,
                                 bool bridge = true);

// P(Omega_{alpha,beta,nu}) = 1 - exp(-2 alpha beta / nu^2)
double event_probability(const EventSpec& e);

struct McEventResult {
    double estimate = 0;
    double std_error = 0;
    double truncation_bound = 0;
    std::uint64_t n_paths = 0;
    std::uint64_t n_in_event = 0;
};

// Frequency estimate over independent seeded paths; truncation_bound is the
// closed-form probability of a first crossing after the finite horizon,
// restarted at the time-T barrier distance (path value ignored,
// conservative).
McEventResult mc_event_probability(const EventSpec& e, std::uint64_t n_paths, double dt,
                                   double horizon, bool bridge, std::uint64_t seed);

}  // namespace ascal

#endif
