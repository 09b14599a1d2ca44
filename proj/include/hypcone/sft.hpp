#pragma once

//
// Subshifts of finite type and the measures they carry.
//
// With A the 0/1 transition matrix, lambda its Perron eigenvalue, m the
// right and u the left eigenvector (u.m = 1):
//
//   one-sided conformal measure   mu([w])   = lambda^{-(n-1)} m_{w_{n-1}} / sum_b m_b
//   two-sided Parry measure       mu_P([w]) = u_{w_0} lambda^{-(n-1)} m_{w_{n-1}}
//
// The conformal measure satisfies mu([aw]) = lambda^{-1} mu([w]) exactly:
// the prepend map is the contraction germ with level-cocycle value 1.
// The product of the forward conformal measure with the conformal measure
// of the transpose shift, corrected by the seam weight u_s m_s, reproduces
// the Parry measure on rectangles.
//

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hypcone/cone.hpp"

namespace hypcone {

struct PerronData {
    double lambda = 0.0;
    std::vector<double> right;   // m, normalized so sum = 1
    std::vector<double> left;    // u, normalized so u.m = 1
    double residual = 0.0;       // max |Am - lambda m| / max m at termination
    int iterations = 0;
};

// Power iteration with the all-ones start vector, certified by the residual
// ||Am - lambda m||_inf < tol ||m||_inf. Throws input_error listing the
// strongly connected components when the matrix is reducible.
PerronData pf_data(const std::vector<std::vector<int>>& matrix, double tol = 1e-13);

using Word = std::vector<int>;

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);

class SftSystem {
public:
    static SftSystem from_matrix(const std::vector<std::vector<int>>& rows,
                                 double eigen_tol = 1e-13);

    int alphabet_size() const { return k_; }
    bool transition(int a, int b) const { return adj_[a * k_ + b] != 0; }
    bool irreducible() const { return irreducible_; }
    bool aperiodic() const { return aperiodic_; }
    const PerronData& perron() const { return pf_; }
    double eigen_tol() const { return eigen_tol_; }
    const std::vector<std::vector<int>>& matrix() const { return rows_; }

    SftSystem transpose() const;

    bool word_admissible(const Word& w) const;
    std::vector<Word> admissible_words(int length) const;

    // mu([w]) for the one-sided level-cocycle conformal measure.
    double conformal_cylinder_measure(const Word& w) const;
    // Two-sided Parry measure of the cylinder [w]; position-independent.
    double parry_two_sided(const Word& w) const;
    // Rectangle measure mu_-(past|seam) mu_+(future|seam) w(seam); past and
    // future both include the seam symbol and must agree on it.
    double product_bowen(const Word& past, const Word& future) const;

private:
    SftSystem() = default;
    int k_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<int>> rows_;
    bool irreducible_ = false;
    bool aperiodic_ = false;
    PerronData pf_;
    double eigen_tol_ = 0.0;
    mutable std::shared_ptr<const SftSystem> transpose_cache_;
};

// Word cone: tree of admissible words, one branch per admissible extension,
// graded by the level cocycle (index 0) plus one custom per-symbol-weight
// cocycle for each row of `symbol_weight_cocycles` (increment = w[symbol]).
GradedCone build_word_cone(const SftSystem& sft, int depth,
                           const std::vector<std::vector<double>>& symbol_weight_cocycles = {},
                           const std::vector<std::string>& weight_names = {});

// -- two-sided points and the local product structure ------------------------

// A finite window of a two-sided sequence: past holds x_{-n}..x_{-1} in
// natural reading order, future holds x_0..x_m. The seam symbol is x_0.
struct TwoSidedPoint {
    Word past;
    Word future;

    int seam() const;
    // x_i for -past.size() <= i <= future.size()-1.
    int at(int i) const;
    TwoSidedPoint shifted(int n) const;  // sigma^n, consumes future symbols
    void validate(const SftSystem& sft) const;
};

// [x, y]: past of x joined to future of y. Both points must carry the same
// seam symbol (single-seam-symbol charts); otherwise input_error.
TwoSidedPoint holonomy_bracket(const SftSystem& sft, const TwoSidedPoint& x,
                               const TwoSidedPoint& y);

// Left-infinite reference past through `seam`: the lexicographically
// smallest admissible cycle through the symbol, repeated. Returns the last
// `length` symbols before the seam, in natural reading order.
Word reference_past(const SftSystem& sft, int seam, int length);

// -- Hoelder cocycle projection ----------------------------------------------

// Symbol accessor for evaluating functions on shifted / re-pasted points
// without materializing them.
using SymbolView = std::function<int(int)>;

struct HolderFunction {
    int past_window = 0;    // depends on x_{-past_window} .. x_{future_window}
    int future_window = 0;
    double var_bound = 0.0;  // var_n <= var_bound * theta^n (caller-declared)
    double theta = 0.5;
    std::function<double(const SymbolView&)> eval;
};

struct ProjectedCocycle {
    int depth = 0;
    double tail_bound = 0.0;
    // Transfer function phi and the future-only representative
    // psi_plus = psi - phi + phi.sigma.
    std::function<double(const TwoSidedPoint&)> phi;
    std::function<double(const TwoSidedPoint&)> psi;
    std::function<double(const TwoSidedPoint&)> psi_plus;
};

// phi(y) = sum_{n=0}^{depth} [psi(sigma^n y) - psi(sigma^n y*)] with
// y* = [y, x_B] the point with the reference past. The declared Hoelder
// data is spot-checked; depth must satisfy var_bound*theta^depth/(1-theta)
// < tol.
ProjectedCocycle project_cocycle(const SftSystem& sft, const HolderFunction& psi,
                                 int depth, double tol);

// All periodic orbits of period <= max_period, one representative word per
// orbit (cyclically admissible, deduplicated under rotation).
std::vector<Word> periodic_orbit_words(const SftSystem& sft, int max_period);

// Birkhoff sum of f over the periodic orbit of the cyclic word w.
double birkhoff_sum(const SftSystem& sft, const Word& w,
                    const std::function<double(const TwoSidedPoint&)>& f,
                    int window = 64);

} // namespace hypcone
