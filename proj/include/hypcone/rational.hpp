#pragma once

//
// Hyperbolic complex rational maps and their preimage cones.
//
// A cone node at depth n holds a point z with f^n(z) = z0 (to root-finding
// tolerance). Two gradings are always attached:
//
//   nu0 : composition length, +1 per edge (the level cocycle), and
//   nu1 : +ln|f'(child)| per edge, i.e. -ln|B'| of the inverse branch B,
//
// so that exp(-nu1(g)) = |(f^n)'(z)|^{-1} along the branch. Hyperbolicity is
// certified heuristically: every finite critical orbit must reach a detected
// attracting cycle (or escape to infinity) within the iteration budget, and
// critical orbits must keep a declared distance from the sampled Julia set.
//

#include <complex>
#include <cstdint>
#include <vector>

#include "hypcone/cone.hpp"
#include "hypcone/measure.hpp"

namespace hypcone {

using cplx = std::complex<double>;

struct HyperbolicityCertificate {
    int iteration_budget = 256;
    double attraction_tol = 1e-9;
    double min_julia_separation = 0.05;
};

struct CriticalOrbitReport {
    cplx critical_point;
    bool attracted = false;
    bool escaped = false;      // attracted to infinity
    int steps_to_capture = -1;
    double multiplier = 0.0;   // |(f^p)'| along the detected cycle
};

struct CertificateReport {
    bool passed = false;
    std::vector<CriticalOrbitReport> orbits;
    double min_distance_to_julia = 0.0;
    std::string failure;
};

struct PreimageRoot {
    cplx z;
    double residual = 0.0;
    bool multiple = false;   // within 100x root tolerance of another root
};

class RationalMapSystem {
public:
    // Coefficient lists are ascending (c0 + c1 z + ...). The denominator
    // defaults to the constant 1 (polynomial maps).
    RationalMapSystem(std::vector<cplx> numerator, std::vector<cplx> denominator,
                      cplx seed, HyperbolicityCertificate cert = {},
                      double root_tol = 1e-12);

    int degree() const { return degree_; }
    cplx seed() const { return seed_; }
    double root_tol() const { return root_tol_; }
    const HyperbolicityCertificate& certificate_params() const { return cert_; }

    cplx evaluate(cplx z) const;
    cplx derivative(cplx z) const;

    // All solutions of f(z) = w by simultaneous (Durand-Kerner) iteration on
    // p(z) - w q(z), flagging clustered roots as multiple.
    std::vector<PreimageRoot> preimages(cplx w) const;

    std::vector<cplx> critical_points() const;
    // Fixed points with |f'| > 1, sorted by decreasing |f'|.
    std::vector<cplx> repelling_fixed_points() const;
    // Inverse-iteration sample of the Julia set from a repelling fixed point.
    std::vector<cplx> julia_cloud(std::size_t count = 512, std::uint64_t rng_seed = 1) const;

    CertificateReport certify() const;

private:
    std::vector<cplx> num_, den_;
    int degree_;
    cplx seed_;
    HyperbolicityCertificate cert_;
    double root_tol_;
};

struct ConeBudget {
    std::size_t cocycle = 0;   // 0 = level, 1 = derivative
    double limit = 0.0;        // expand while grading(node) < limit (1e-9 slack)
};

inline constexpr std::size_t kNu0 = 0;
inline constexpr std::size_t kNu1 = 1;

// Breadth-first preimage tree from the seed. Children are ordered by the
// angle of (child - centroid of siblings) so node ids are reproducible.
// Throws resource_error above 10^7 nodes and input_error when a multiple
// preimage (critical point) is hit on a branch.
GradedCone build_preimage_cone(const RationalMapSystem& sys, ConeBudget budget);

struct DistortionReport {
    double constant = 1.0;       // max(max_ratio, 1/min_ratio)
    double max_ratio = 1.0;
    double min_ratio = 1.0;
    std::size_t pairs_used = 0;
    std::size_t pairs_skipped = 0;  // ambiguous branch continuation
};

// For sampled deep nodes, applies the root-to-node inverse branch chain to
// point pairs at offset eps from the seed and compares |B(x)-B(y)| with
// exp(-nu1)|x-y|.
DistortionReport distortion_check(const RationalMapSystem& sys, const GradedCone& cone,
                                  std::size_t sample_nodes, double eps,
                                  std::uint64_t rng_seed = 7);

// Uniform weight d^{-n} on the depth-n preimages of the seed.
AtomicMeasure brolin_lyubich(const RationalMapSystem& sys, int n);

struct DualCocycleResult {
    double value = 0.0;
    double tail_bound = 0.0;
    double contraction = 0.0;    // measured shadowing contraction factor
    int depth = 0;
};

// D = sum_k (ln|f'(z_k)| - ln|f'(w_k)|) over shadowing inverse orbits;
// z continues to its own nearest preimage, w to the preimage nearest z.
DualCocycleResult dual_cocycle(const RationalMapSystem& sys, cplx z, cplx w, int depth);

} // namespace hypcone
