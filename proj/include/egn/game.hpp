#pragma once

#include <optional>
#include <vector>

#include "egn/graph.hpp"

namespace egn {

// Comparisons against zero use this slack everywhere a sign decides an outcome.
inline constexpr double kSignTolerance = 1e-9;

// 2x2 payoff matrix of the symmetric pairwise game. Row = own strategy,
// column = opponent's; strategy 1 is "cooperate" (first coordinate).
struct PayoffMatrix {
    double cc = 0.0;  // both cooperate
    double cd = 0.0;  // own C vs opponent D
    double dc = 0.0;  // own D vs opponent C
    double dd = 0.0;  // both defect

    // Gain of C over D against a cooperator.
    double sigma_c() const { return cc - dc; }
    // Gain of D over C against a defector.
    double sigma_d() const { return dd - cd; }

    bool operator==(const PayoffMatrix&) const = default;
};

enum class GameClass {
    Coordination,      // sigma_c > 0 and sigma_d > 0
    AntiCoordination,  // sigma_c < 0 and sigma_d < 0
    MixedSign,         // sigmas of opposite (nonzero) sign
    Degenerate,        // either sigma within tolerance of zero
};

GameClass classify_game(const PayoffMatrix& b, double tol = kSignTolerance);

// sigma_c / sigma_d, undefined when sigma_d is (numerically) zero.
struct Ratio {
    bool defined = false;
    double value = 0.0;
};

Ratio payoff_ratio(const PayoffMatrix& b, double tol = kSignTolerance);

// x[v] in [0,1] is the probability vertex v plays C.
using StateVector = std::vector<double>;

// Network with one payoff matrix per vertex. Sigma values are cached at
// construction; they are read in every inner loop.
class EgnInstance {
   public:
    EgnInstance(Graph graph, std::vector<PayoffMatrix> payoffs);
    // Every vertex plays the same matrix.
    EgnInstance(Graph graph, const PayoffMatrix& common);

    const Graph& graph() const { return graph_; }
    int num_vertices() const { return graph_.num_vertices(); }
    const PayoffMatrix& payoff(int v) const { return payoffs_[v]; }
    double sigma_c(int v) const { return sigma_c_[v]; }
    double sigma_d(int v) const { return sigma_d_[v]; }
    GameClass vertex_class(int v) const { return class_[v]; }

    // The single shared matrix, if all vertices carry the same one.
    std::optional<PayoffMatrix> common_payoff() const;

   private:
    void build_caches();

    Graph graph_;
    std::vector<PayoffMatrix> payoffs_;
    std::vector<double> sigma_c_;
    std::vector<double> sigma_d_;
    std::vector<GameClass> class_;
};

// Expected payoff of the row player under matrix b when the players
// cooperate with probabilities xv and xw: [xv,1-xv] B [xw,1-xw]^T.
double pairwise_payoff(const PayoffMatrix& b, double xv, double xw);

// Sum of pairwise payoffs over all neighbors of v.
double network_payoff(const EgnInstance& inst, const StateVector& x, int v);

// Growth rate of strategy C at v: (sigma_c + sigma_d) * sum_w x_w - sigma_d * deg(v),
// the payoff advantage of pure C over the current mixed strategy, per unit x_v(1-x_v).
double growth(const EgnInstance& inst, const StateVector& x, int v);

}  // namespace egn
