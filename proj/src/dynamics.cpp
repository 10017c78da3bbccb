#include "egn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace egn {

std::vector<double> rhs(const EgnInstance& inst, const StateVector& x) {
    const int n = inst.num_vertices();
    std::vector<double> dx(n);
    for (int v = 0; v < n; ++v) dx[v] = x[v] * (1.0 - x[v]) * growth(inst, x, v);
    return dx;
}

StateVector rk4_step(const EgnInstance& inst, const StateVector& x, double dt) {
    const int n = inst.num_vertices();
    const auto k1 = rhs(inst, x);
    StateVector stage(n);
    for (int v = 0; v < n; ++v) stage[v] = x[v] + 0.5 * dt * k1[v];
    const auto k2 = rhs(inst, stage);
    for (int v = 0; v < n; ++v) stage[v] = x[v] + 0.5 * dt * k2[v];
    const auto k3 = rhs(inst, stage);
    for (int v = 0; v < n; ++v) stage[v] = x[v] + dt * k3[v];
    const auto k4 = rhs(inst, stage);
    StateVector next(n);
    for (int v = 0; v < n; ++v)
        next[v] = x[v] + dt / 6.0 * (k1[v] + 2.0 * k2[v] + 2.0 * k3[v] + k4[v]);
    return next;
}

namespace {

void validate(const TrajectoryConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("trajectory: dt must be positive");
    if (!(cfg.t_end >= cfg.dt)) throw std::invalid_argument("trajectory: t_end must be >= dt");
    if (!(cfg.convergence_tol > 0.0))
        throw std::invalid_argument("trajectory: convergence_tol must be positive");
    if (cfg.record_stride < 1)
        throw std::invalid_argument("trajectory: record_stride must be >= 1");
}

// Largest distance from any component to its nearest corner value.
double corner_distance(const StateVector& x) {
    double worst = 0.0;
    for (double c : x) worst = std::max(worst, std::abs(c - std::round(c)));
    return worst;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
}

PureProfile rounded_profile(const StateVector& x) {
    std::uint64_t index = 0;
    for (std::size_t v = 0; v < x.size(); ++v)
        if (x[v] >= 0.5) index |= std::uint64_t{1} << v;
    return PureProfile{index, static_cast<int>(x.size())};
}

}  // namespace

Trajectory integrate(const EgnInstance& inst, const StateVector& x0,
                     const TrajectoryConfig& cfg) {
    validate(cfg);
    const int n = inst.num_vertices();
    if (static_cast<int>(x0.size()) != n)
        throw std::invalid_argument("trajectory: state size does not match the instance");
    for (double c : x0)
        if (!(c >= 0.0 && c <= 1.0))
            throw std::invalid_argument("trajectory: initial state must lie in [0,1]");

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(x0);

    StateVector x = x0;
    const long long steps = std::llround(cfg.t_end / cfg.dt);
    long long step = 0;
    auto converged = [&]() {
        return corner_distance(x) < cfg.convergence_tol &&
               max_abs(rhs(inst, x)) < cfg.convergence_tol;
    };
    bool done = converged();
    for (step = 0; step < steps && !done; ) {
        StateVector next = rk4_step(inst, x, cfg.dt);
        for (int v = 0; v < n; ++v) {
            if (!std::isfinite(next[v])) {
                std::ostringstream msg;
                msg << "trajectory: non-finite state at step " << step + 1;
                throw std::runtime_error(msg.str());
            }
            const double clamped = std::clamp(next[v], 0.0, 1.0);
            traj.max_step_clamp = std::max(traj.max_step_clamp, std::abs(next[v] - clamped));
            next[v] = clamped;
        }
        x = std::move(next);
        ++step;
        if (step % cfg.record_stride == 0) {
            traj.times.push_back(step * cfg.dt);
            traj.states.push_back(x);
        }
        done = converged();
    }
    traj.terminal = x;
    traj.terminal_time = step * cfg.dt;
    if (traj.times.back() != traj.terminal_time) {
        traj.times.push_back(traj.terminal_time);
        traj.states.push_back(x);
    }
    if (done) traj.converged_to = rounded_profile(x);
    return traj;
}

StateVector perturb_inward(PureProfile p, double delta) {
    StateVector x(p.n);
    for (int v = 0; v < p.n; ++v) x[v] = p.bit(v) ? 1.0 - delta : delta;
    return x;
}

StateVector perturb_coordinate(PureProfile p, int v, double delta) {
    StateVector x = p.to_state();
    x[v] = p.bit(v) ? 1.0 - delta : delta;
    return x;
}

BasinReport basin_probe(const EgnInstance& inst, int samples, std::uint64_t seed,
                        const TrajectoryConfig& cfg, int jobs) {
    if (samples <= 0) throw std::invalid_argument("basin probe: samples must be positive");
    validate(cfg);
    const int n = inst.num_vertices();

    // All starting points are drawn up front so the tallies do not depend on
    // how trajectories are scheduled.
    std::mt19937_64 rng(seed);
    auto unit_draw = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<StateVector> starts(samples, StateVector(n));
    for (auto& x0 : starts)
        for (double& c : x0) c = unit_draw();

    // -1 marks a non-converged run.
    std::vector<std::int64_t> limits(samples, -1);
#ifdef _OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)jobs;
#endif
    for (int s = 0; s < samples; ++s) {
        const Trajectory t = integrate(inst, starts[s], cfg);
        if (t.converged_to) limits[s] = static_cast<std::int64_t>(t.converged_to->index);
    }

    BasinReport report;
    report.n = n;
    for (std::int64_t lim : limits) {
        if (lim < 0)
            ++report.nonconverged;
        else
            ++report.converged[static_cast<std::uint64_t>(lim)];
    }
    return report;
}

}  // namespace egn
