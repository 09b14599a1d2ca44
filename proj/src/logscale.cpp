#include "hypcone/logscale.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>

#include "hypcone/numeric.hpp"

namespace hypcone {

LogScaleTable::LogScaleTable(std::vector<std::string> ids, std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
    const std::size_t n = ids_.size();
    if (values_.size() != n * n) throw input_error("log-scale table has wrong shape");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isinf(at(i, i)) || at(i, i) < 0)
            throw input_error("log-scale diagonal must be +inf");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (at(i, j) != at(j, i)) throw input_error("log-scale table must be symmetric");
            if (std::isinf(at(i, j)))
                throw input_error("log-scale is +inf off the diagonal: points " +
                                  ids_[i] + ", " + ids_[j] + " coincide");
        }
    }
    delta_ = measured_delta();
}

double LogScaleTable::measured_delta() const {
    const std::size_t n = ids_.size();
    double worst = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (y == x) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (z == x || z == y) continue;
                const double defect = std::min(at(x, y), at(y, z)) - at(x, z);
                worst = std::max(worst, defect);
            }
        }
    return worst;
}

void LogScaleTable::validate() const {
    if (measured_delta() > delta_)
        throw input_error("log-scale triple inequality violated for stored delta");
}

std::string LogScaleTable::to_csv() const {
    std::ostringstream out;
    out << "id";
    for (const auto& id : ids_) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        out << ids_[i];
        for (std::size_t j = 0; j < ids_.size(); ++j) {
            out << ',';
            if (i == j)
                out << "inf";
            else
                out << format_sig(at(i, j));
        }
        out << '\n';
    }
    return out.str();
}

LogScaleTable LogScaleTable::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw input_error("empty log-scale CSV");
    std::vector<std::string> ids;
    {
        std::istringstream header(line);
        std::string cell;
        bool first = true;
        while (std::getline(header, cell, ',')) {
            if (first) {
                first = false;
                continue;
            }
            ids.push_back(cell);
        }
    }
    const std::size_t n = ids.size();
    std::vector<double> values(n * n, 0.0);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= n) throw input_error("log-scale CSV has too many rows");
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');  // row id
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::getline(cells, cell, ',')) throw input_error("log-scale CSV row too short");
            values[row * n + j] = (cell == "inf") ? kInf : std::strtod(cell.c_str(), nullptr);
        }
        ++row;
    }
    if (row != n) throw input_error("log-scale CSV has too few rows");
    return LogScaleTable(std::move(ids), std::move(values));
}

std::string DistanceTable::to_csv() const {
    std::ostringstream out;
    out << "id";
    for (const auto& id : ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << ids[i];
        for (std::size_t j = 0; j < ids.size(); ++j) out << ',' << format_sig(at(i, j));
        out << '\n';
    }
    return out.str();
}

LogScaleTable logscale_from_cone(const GradedCone& cone, std::size_t cocycle,
                                 const std::vector<std::int32_t>& leaves) {
    if (leaves.size() < 2) throw input_error("need at least 2 leaves for a log-scale");
    for (std::size_t i = 0; i < leaves.size(); ++i)
        for (std::size_t j = i + 1; j < leaves.size(); ++j)
            if (leaves[i] == leaves[j])
                throw input_error("leaf id " + std::to_string(leaves[i]) + " repeated");
    const std::size_t n = leaves.size();
    std::vector<std::string> ids(n);
    std::vector<double> values(n * n, kInf);
    for (std::size_t i = 0; i < n; ++i) ids[i] = "n" + std::to_string(leaves[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double g = gromov_product(cone, cocycle, leaves[i], leaves[j]);
            values[i * n + j] = g;
            values[j * n + i] = g;
        }
    return LogScaleTable(std::move(ids), std::move(values));
}

DistanceTable metric_from_logscale(const LogScaleTable& table, double alpha) {
    if (alpha <= 0.0) throw input_error("alpha must be positive");
    if (table.size() < 2) throw input_error("need at least 2 points");
    const double bound = std::log(2.0) / 4.0;  // exp(alpha*delta) <= 2^{1/4}
    if (table.delta() > 0.0 && alpha * table.delta() > bound)
        throw input_error("alpha too large for delta = " + format_sig(table.delta()) +
                          "; maximal admissible alpha = " + format_sig(bound / table.delta()));

    const std::size_t n = table.size();
    std::vector<double> rho(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rho[i * n + j] = (i == j) ? 0.0 : std::exp(-alpha * table.at(i, j));

    // Chain infimum = shortest path in the complete graph with weights rho.
    // Dijkstra accumulates left-to-right along each path, so the result is
    // the exact minimum over simple chains of the floating-point chain sums.
    DistanceTable out;
    out.ids = table.ids();
    out.alpha = alpha;
    out.values.assign(n * n, 0.0);
    std::vector<double> dist(n);
    std::vector<char> done(n);
    for (std::size_t src = 0; src < n; ++src) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(done.begin(), done.end(), 0);
        dist[src] = 0.0;
        for (std::size_t iter = 0; iter < n; ++iter) {
            std::size_t u = n;
            double best = kInf;
            for (std::size_t v = 0; v < n; ++v)
                if (!done[v] && dist[v] < best) {
                    best = dist[v];
                    u = v;
                }
            if (u == n) break;
            done[u] = 1;
            for (std::size_t v = 0; v < n; ++v) {
                if (done[v] || v == u) continue;
                const double cand = dist[u] + rho[u * n + v];
                if (cand < dist[v]) dist[v] = cand;
            }
        }
        for (std::size_t v = 0; v < n; ++v) out.values[src * n + v] = dist[v];
    }
    // Symmetrize exactly (runs from both endpoints can differ in the last ulp).
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::min(out.values[i * n + j], out.values[j * n + i]);
            out.values[i * n + j] = d;
            out.values[j * n + i] = d;
        }

    double c = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = out.values[i * n + j];
            if (d <= 0.0) throw precision_error("chain infimum underflowed to zero");
            c = std::max(c, rho[i * n + j] / d);
        }
    out.sandwich_constant = c;
    return out;
}

namespace {

double four_point_defect(const DistanceTable& d, std::size_t a, std::size_t b,
                         std::size_t c, std::size_t e) {
    double s1 = d.at(a, b) + d.at(c, e);
    double s2 = d.at(a, c) + d.at(b, e);
    double s3 = d.at(a, e) + d.at(b, c);
    if (s1 < s2) std::swap(s1, s2);
    if (s1 < s3) std::swap(s1, s3);
    if (s2 < s3) std::swap(s2, s3);
    return (s1 - s2) / 2.0;
}

} // namespace

DeltaHyperbolicityReport estimate_delta_hyperbolicity(const DistanceTable& dist,
                                                      std::size_t max_exhaustive,
                                                      std::uint64_t samples,
                                                      std::uint64_t seed) {
    const std::size_t n = dist.size();
    if (n < 4) throw input_error("need at least 4 points for the four-point condition");
    DeltaHyperbolicityReport rep;
    rep.seed = seed;
    if (n <= max_exhaustive) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    for (std::size_t e = c + 1; e < n; ++e) {
                        rep.delta = std::max(rep.delta, four_point_defect(dist, a, b, c, e));
                        ++rep.quadruples;
                    }
        rep.exhaustive = true;
    } else {
        rep.exhaustive = false;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::uint64_t k = 0; k < samples; ++k) {
            std::size_t a = pick(rng), b = pick(rng), c = pick(rng), e = pick(rng);
            if (a == b || a == c || a == e || b == c || b == e || c == e) continue;
            rep.delta = std::max(rep.delta, four_point_defect(dist, a, b, c, e));
            ++rep.quadruples;
        }
    }
    return rep;
}

} // namespace hypcone
