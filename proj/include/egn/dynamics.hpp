#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "egn/equilibria.hpp"
#include "egn/game.hpp"

namespace egn {

struct TrajectoryConfig {
    double dt = 0.01;
    double t_end = 200.0;
    double convergence_tol = 1e-6;
    int record_stride = 100;  // snapshot every this many steps
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;  // snapshots, always including t=0 and the end
    StateVector terminal;
    double terminal_time = 0.0;
    std::optional<PureProfile> converged_to;
    // Largest single-step out-of-box excursion that had to be clamped; a
    // healthy run keeps this below 1e-9.
    double max_step_clamp = 0.0;

    bool clamp_ok() const { return max_step_clamp < 1e-9; }
};

// Component v: x_v (1 - x_v) f_v(x), with f_v the growth rate.
std::vector<double> rhs(const EgnInstance& inst, const StateVector& x);

// One classic fourth-order Runge-Kutta step, no clamping.
StateVector rk4_step(const EgnInstance& inst, const StateVector& x, double dt);

// Fixed-step integration with per-step clamping to [0,1]. Stops early once
// every component is within convergence_tol of {0,1} and the field is
// equally small, recording the rounded profile. Throws on a non-finite
// state, naming the step.
Trajectory integrate(const EgnInstance& inst, const StateVector& x0,
                     const TrajectoryConfig& cfg);

// Pure profile moved distance delta into the interior on every coordinate.
StateVector perturb_inward(PureProfile p, double delta);

// Only coordinate v is moved inward; the rest stay on the boundary.
StateVector perturb_coordinate(PureProfile p, int v, double delta);

struct BasinReport {
    int n = 0;
    std::map<std::uint64_t, std::int64_t> converged;  // profile index -> trajectories
    std::int64_t nonconverged = 0;
};

// Integrates from `samples` seeded uniform interior points and tallies the
// pure limits. Deterministic in (samples, seed, cfg); jobs <= 0 uses all
// threads (parallelism does not affect the tallies).
BasinReport basin_probe(const EgnInstance& inst, int samples, std::uint64_t seed,
                        const TrajectoryConfig& cfg, int jobs = 0);

}  // namespace egn
