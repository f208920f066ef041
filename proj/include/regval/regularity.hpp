#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regval/algebra.hpp"

namespace regval {

struct RegularSequenceWitness {
    std::vector<Poly> elements;
    // how each element was shown to be regular, in order
    std::vector<std::string> proofs;
    bool radical_flag = false;
    // every center generator lies in the ideal of the sequence (not just its radical)
    bool generates_center = false;
    std::optional<Poly> base_element;
};

enum class Status { Regular, NotRegular, Unknown };
enum class Certificate { None, FibreSmooth, KoszulRadical, CotangentOverflow, FibreNotCM, NonFgFibreSingular };

std::string to_string(Status s);
std::string to_string(Certificate c);

// wdim is either finite, infinite or unknown
struct WDim {
    enum class Kind { Finite, Infinite, Unknown } kind = Kind::Unknown;
    int value = 0;
    static WDim finite(int v) { return {Kind::Finite, v}; }
    static WDim infinite() { return {Kind::Infinite, 0}; }
    static WDim unknown() { return {Kind::Unknown, 0}; }
    bool is_finite() const { return kind == Kind::Finite; }
    std::string to_string() const;
};

struct RegularityVerdict {
    Status status = Status::Unknown;
    Certificate certificate = Certificate::None;
    WDim wdim;
    std::optional<RegularSequenceWitness> witness;
    int cotangent_dim = 0;
    int fibre_cotangent_dim = 0;
    int fibre_local_dim = 0;
    // CotangentOverflow: dim T and the bound it exceeds
    int overflow_dim = 0, overflow_bound = 0;
    std::optional<Poly> socle_witness;
    std::string note;
};

// Local tests in a polynomial ring modulo J, localized at the prime P.
bool local_nonzerodivisor(const Ideal& J, const Poly& f, const Ideal& P);
bool locally_zero(const Ideal& J, const Poly& h, const Ideal& P);

RegularSequenceWitness lift_regular_sequence(const Chart& c);
RegularityVerdict classify(const Chart& c);
// fibre local dim (+1 over a nonzero base prime) when regular, infinite when not
WDim wdim_of(const Chart& c, const RegularityVerdict& v);
int wdim_upper_bound(const Chart& c, const RegularityVerdict& v);

// ------------------------------------------------------------------ grade

struct GradeResult {
    int length = 0;
    std::vector<Poly> sequence;
};

// Greedy regular sequence inside I on the ring modulo J, localized at P when
// given. Pool: generators, small linear combinations, monomial multiples up
// to pool_degree.
GradeResult grade_search(const Ideal& J, const Ideal& I, const std::optional<Ideal>& P, int pool_degree = 1);

struct PolynomialGrade {
    int grade = 0;
    std::vector<int> per_extension;
    bool stable = false;
};
PolynomialGrade polynomial_grade(const Ideal& J, const Ideal& I, const std::optional<Ideal>& P, int max_extra_vars);

enum class CMStatus { CM, NotCM, Unknown };
std::string to_string(CMStatus s);
struct CMResult {
    CMStatus status = CMStatus::Unknown;
    int depth = 0;
    std::vector<Poly> witness;
};
CMResult fibre_cm_check(const Chart& c);
// socle element of the fibre local ring, if one is found
std::optional<Poly> fibre_socle_witness(const Chart& c);
bool grade_extension_check(const Chart& c, const RegularityVerdict& v);

// ------------------------------------------------------------- invariants

struct CheckResult {
    std::string name;
    bool passed = true;
    bool skipped = false;
    std::string detail;
};

// Cross-checks for one classified point.
std::vector<CheckResult> point_invariants(const Chart& c, const RegularityVerdict& v, bool deep);
// fibre dimension agrees over all primes with nonempty fibre
CheckResult fibre_dimension_invariant(const PresentedAlgebra& A);

}  // namespace regval
