#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace hypcone {

enum class MeasureProvenance { ps_limit, brolin_lyubich, parry_conformal, product_bowen, external };

std::string provenance_name(MeasureProvenance p);
MeasureProvenance provenance_from_name(const std::string& s);

// One atom of a finite measure. The location is a complex point, a symbolic
// word (cylinder / tree path), or both; cone-derived measures carry both.
struct Atom {
    std::complex<double> point{0.0, 0.0};
    bool has_point = false;
    std::string word;
    double weight = 0.0;
};

class AtomicMeasure {
public:
    AtomicMeasure() = default;
    AtomicMeasure(std::vector<Atom> atoms, MeasureProvenance provenance,
                  std::string note = "");

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double total_mass() const { return total_mass_; }
    MeasureProvenance provenance() const { return provenance_; }
    const std::string& note() const { return note_; }

    double integrate(const std::function<double(const Atom&)>& f) const;
    // Mass of the cylinder: sum of atoms whose word starts with `prefix`.
    double cylinder_mass(const std::string& prefix) const;
    AtomicMeasure normalized() const;

    // Checks weight positivity, the stored total mass, and pairwise
    // distinctness of equal-length words.
    void validate() const;

    std::string to_csv() const;
    std::string to_json() const;
    static AtomicMeasure from_json(const std::string& text);

private:
    void build_word_index() const;

    std::vector<Atom> atoms_;
    double total_mass_ = 0.0;
    MeasureProvenance provenance_ = MeasureProvenance::external;
    std::string note_;
    mutable std::vector<std::uint32_t> word_order_;  // atoms sorted by word
};

} // namespace hypcone
