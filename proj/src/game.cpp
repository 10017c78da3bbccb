#include "egn/game.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace egn {

GameClass classify_game(const PayoffMatrix& b, double tol) {
    const double sc = b.sigma_c();
    const double sd = b.sigma_d();
    if (std::abs(sc) <= tol || std::abs(sd) <= tol) return GameClass::Degenerate;
    if (sc > 0.0 && sd > 0.0) return GameClass::Coordination;
    if (sc < 0.0 && sd < 0.0) return GameClass::AntiCoordination;
    return GameClass::MixedSign;
}

Ratio payoff_ratio(const PayoffMatrix& b, double tol) {
    const double sd = b.sigma_d();
    if (std::abs(sd) <= tol) return {};
    return {true, b.sigma_c() / sd};
}

void EgnInstance::build_caches() {
    const int n = graph_.num_vertices();
    if (static_cast<int>(payoffs_.size()) != n)
        throw std::invalid_argument("instance: need one payoff matrix per vertex");
    sigma_c_.resize(n);
    sigma_d_.resize(n);
    class_.resize(n);
    for (int v = 0; v < n; ++v) {
        sigma_c_[v] = payoffs_[v].sigma_c();
        sigma_d_[v] = payoffs_[v].sigma_d();
        class_[v] = classify_game(payoffs_[v]);
    }
}

EgnInstance::EgnInstance(Graph graph, std::vector<PayoffMatrix> payoffs)
    : graph_(std::move(graph)), payoffs_(std::move(payoffs)) {
    build_caches();
}

// payoffs_ is initialized after graph_ (declaration order), so graph_ is valid here.
EgnInstance::EgnInstance(Graph graph, const PayoffMatrix& common)
    : graph_(std::move(graph)),
      payoffs_(static_cast<std::size_t>(graph_.num_vertices()), common) {
    build_caches();
}

std::optional<PayoffMatrix> EgnInstance::common_payoff() const {
    for (int v = 1; v < num_vertices(); ++v)
        if (!(payoffs_[v] == payoffs_[0])) return std::nullopt;
    return payoffs_[0];
}

double pairwise_payoff(const PayoffMatrix& b, double xv, double xw) {
    return xv * xw * b.cc + xv * (1.0 - xw) * b.cd + (1.0 - xv) * xw * b.dc +
           (1.0 - xv) * (1.0 - xw) * b.dd;
}

double network_payoff(const EgnInstance& inst, const StateVector& x, int v) {
    double total = 0.0;
    for (int w : inst.graph().neighbors(v))
        total += pairwise_payoff(inst.payoff(v), x[v], x[w]);
    return total;
}

double growth(const EgnInstance& inst, const StateVector& x, int v) {
    double nbr_sum = 0.0;
    for (int w : inst.graph().neighbors(v)) nbr_sum += x[w];
    return (inst.sigma_c(v) + inst.sigma_d(v)) * nbr_sum -
           inst.sigma_d(v) * inst.graph().degree(v);
}

}  // namespace egn
