#pragma once

//
// Log-scales and the metrics they generate.
//
// A log-scale is a symmetric function ell(x,y) with ell = +inf exactly on
// the diagonal and the ultrametric-type inequality
//
//     ell(x,z) >= min(ell(x,y), ell(y,z)) - delta.
//
// For small enough alpha the weights rho = exp(-alpha*ell) seed a genuine
// metric via the chain infimum
//
//     d(x,y) = inf over chains x=z0,...,zk=y of sum rho(z_i, z_{i+1}),
//
// which satisfies c^{-1} rho <= d <= rho. The admissibility condition used
// here is exp(alpha*delta) <= 2^{1/4}; larger alpha is rejected rather than
// silently degraded, and the sandwich constant c is measured and reported.
//

#include <cstdint>
#include <string>
#include <vector>

#include "hypcone/cone.hpp"

namespace hypcone {

class LogScaleTable {
public:
    LogScaleTable(std::vector<std::string> ids, std::vector<double> values);

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * ids_.size() + j]; }
    double delta() const { return delta_; }

    // Worst triple defect max(min(l(x,y), l(y,z)) - l(x,z), 0) over all triples.
    double measured_delta() const;
    // Symmetry, diagonal and the triple inequality with the stored delta.
    void validate() const;

    std::string to_csv() const;
    static LogScaleTable from_csv(const std::string& text);

private:
    std::vector<std::string> ids_;
    std::vector<double> values_;
    double delta_ = 0.0;
};

struct DistanceTable {
    std::vector<std::string> ids;
    std::vector<double> values;   // row-major, symmetric, zero diagonal
    double alpha = 0.0;
    double sandwich_constant = 1.0;  // measured c with c^{-1} e^{-al} <= d <= e^{-al}

    std::size_t size() const { return ids.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * ids.size() + j]; }
    std::string to_csv() const;
};

// Pairwise Gromov products of the given leaves; delta is the measured
// worst-case triple defect of the resulting table.
LogScaleTable logscale_from_cone(const GradedCone& cone, std::size_t cocycle,
                                 const std::vector<std::int32_t>& leaves);

// Chain-infimum metric of exponent alpha. Throws input_error when
// exp(alpha*delta) > 2^{1/4}, naming the maximal admissible alpha.
DistanceTable metric_from_logscale(const LogScaleTable& table, double alpha);

struct DeltaHyperbolicityReport {
    double delta = 0.0;
    bool exhaustive = true;
    std::uint64_t quadruples = 0;
    std::uint64_t seed = 0;
};

// Four-point condition: for each quadruple, half the gap between the two
// largest of the three pair sums. Exhaustive up to max_exhaustive points,
// sampled (with the reported seed) above.
DeltaHyperbolicityReport estimate_delta_hyperbolicity(const DistanceTable& dist,
                                                      std::size_t max_exhaustive = 200,
                                                      std::uint64_t samples = 2'000'000,
                                                      std::uint64_t seed = 0x5eed);

} // namespace hypcone
