#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <initializer_list>
#include <vector>

#include "ebbi/nonneg.hpp"

namespace ebbi {

using Complex = std::complex<double>;

// Dense operator on n <= 4 spin-1/2 objects (dim 2, 4, 8 or 16; dim 1 is not used).
class ComplexSquareMatrix {
public:
    explicit ComplexSquareMatrix(Eigen::MatrixXcd m);

    static ComplexSquareMatrix identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    Complex operator()(int i, int j) const { return m_(i, j); }
    const Eigen::MatrixXcd& eigen() const { return m_; }

    ComplexSquareMatrix adjoint() const;
    Complex trace() const { return m_.trace(); }
    double max_abs() const;        // largest |entry|
    double spectral_norm() const;  // largest singular value

    friend ComplexSquareMatrix operator*(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b);
    friend ComplexSquareMatrix operator+(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b);
    friend ComplexSquareMatrix operator-(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b);
    friend ComplexSquareMatrix operator*(Complex s, const ComplexSquareMatrix& a);

private:
    Eigen::MatrixXcd m_;
};

// Kronecker product; the left factor varies slowest.
ComplexSquareMatrix kron(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b);

// One-particle operator acting on `particle` (1-based) of n.
ComplexSquareMatrix embed(const ComplexSquareMatrix& op, int particle, int n);

class UnitVector3 {
public:
    UnitVector3(double x, double y, double z);
    // (sin t, 0, cos t): angle measured from z in the xz-plane.
    static UnitVector3 from_xz_angle(double theta);
    // Normalizes v; throws if v is zero.
    static UnitVector3 normalized(const Eigen::Vector3d& v);

    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }
    const Eigen::Vector3d& vec() const { return v_; }
    double dot(const UnitVector3& o) const { return v_.dot(o.v_); }

private:
    Eigen::Vector3d v_;
};

class DensityMatrix {
public:
    // Checks Hermitian, unit trace and PSD.
    explicit DensityMatrix(ComplexSquareMatrix m);

    static DensityMatrix pure(const Eigen::VectorXcd& psi);
    static DensityMatrix maximally_mixed(int n);
    // (1 + x.sigma)/2 with |x| <= 1.
    static DensityMatrix from_bloch(const Eigen::Vector3d& x);

    int particles() const { return n_; }
    const ComplexSquareMatrix& matrix() const { return m_; }
    // Tr rho * op, real part (op is expected Hermitian).
    double expectation(const ComplexSquareMatrix& op) const;
    Complex expectation_complex(const ComplexSquareMatrix& op) const;

private:
    ComplexSquareMatrix m_;
    int n_;
};

class ProbabilityTable {
public:
    ProbabilityTable(int n, std::vector<double> p);

    int arity() const { return n_; }
    const std::vector<double>& p() const { return p_; }
    double at(std::initializer_list<int> signs) const {
        return p_[static_cast<std::size_t>(sign_index(signs))];
    }
    double mean(int i) const;              // <S_i>
    double correlation(int i, int j) const;  // <S_i S_j>
    FuncTable2 to_func2() const;
    FuncTable3 to_func3() const;

private:
    int n_;
    std::vector<double> p_;
};

ComplexSquareMatrix pauli_x();
ComplexSquareMatrix pauli_y();
ComplexSquareMatrix pauli_z();
ComplexSquareMatrix pauli_dot(const UnitVector3& a);
// sigma.v for an arbitrary (not necessarily unit) real vector.
ComplexSquareMatrix pauli_dot_vec(const Eigen::Vector3d& v);
ComplexSquareMatrix projector(int s, const UnitVector3& a);

DensityMatrix singlet();
Eigen::VectorXcd singlet_vector();

ProbabilityTable diag_prob(const DensityMatrix& rho);

Eigen::Vector3d bloch_vector(const DensityMatrix& rho1);

// Projector-chain probabilities on one particle.
ProbabilityTable filter_prob2(const DensityMatrix& rho1, const UnitVector3& a, const UnitVector3& b);
ProbabilityTable filter_prob3(const DensityMatrix& rho1, const UnitVector3& a, const UnitVector3& b,
                              const UnitVector3& c);
// Closed forms in terms of the Bloch vector x.
ProbabilityTable filter_prob2_closed(const Eigen::Vector3d& x, const UnitVector3& a,
                                     const UnitVector3& b);
ProbabilityTable filter_prob3_closed(const Eigen::Vector3d& x, const UnitVector3& a,
                                     const UnitVector3& b, const UnitVector3& c);

// <sigma1.u sigma2.v> in state rho.
double pair_correlation(const DensityMatrix& rho, const UnitVector3& u, const UnitVector3& v);

// Singlet pair tables for settings (a,b), (a,c), (b,c); particle 1 gets the first.
std::array<ProbabilityTable, 3> eprb_pair_tables(const UnitVector3& a, const UnitVector3& b,
                                                 const UnitVector3& c);

struct SchwartzSide {
    double lhs = 0;    // |E ± E^|^2
    double rhs = 0;    // 2(1 ± b.c)
    double cos2 = 0;   // cos^2 of the angle between a and b ± c
    bool holds = true;
    bool equality = false;  // lhs == rhs within 1e-10
};

struct SchwartzReport {
    double E = 0, Ehat = 0, Etilde = 0;
    SchwartzSide plus, minus;
    // cos2(+) + cos2(-) is the squared length of a's projection on span(b,c).
    double cos2_sum = 0;
    bool a_in_span = false;
    bool combined_equality = false;  // cos2_sum == 1 within 1e-10
};

SchwartzReport schwartz_bound(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c);

struct ExtendedEprb3 {
    ProbabilityTable table;
    ExpansionCoeffs3 coeffs;
    double norm = 0;  // sum |Phi|^2 of the amplitude route
};

// Coplanar settings given as xz-plane angles; particle 1 at a, particle 2 at b then c.
ExtendedEprb3 extended_eprb_prob3(double theta_a, double theta_b, double theta_c);
// Amplitude Phi(S1,S2,S3), the route used by extended_eprb_prob3.
Complex extended_eprb_amplitude(double theta_a, double theta_b, double theta_c, int s1, int s2,
                                int s3);
ProbabilityTable extended_eprb_prob3_closed(double theta_a, double theta_b, double theta_c);
// Tr rho M(S1,a) M(S2,b) M(S3,c) M(S2,b) M(S1,a) on the singlet.
ProbabilityTable extended_eprb_prob3_chain(const UnitVector3& a, const UnitVector3& b,
                                           const UnitVector3& c);

struct PairCorrelations4 {
    double e12 = 0, e13 = 0, e14 = 0, e23 = 0, e24 = 0, e34 = 0;
};

struct ExtendedEprb4 {
    ProbabilityTable table;
    PairCorrelations4 corr;
};

// Seven-projector chain: a and d on particle 1, b and c on particle 2.
ExtendedEprb4 extended_eprb_prob4(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c,
                                  const UnitVector3& d);
PairCorrelations4 extended_eprb_prob4_closed(const UnitVector3& a, const UnitVector3& b,
                                             const UnitVector3& c, const UnitVector3& d);

struct SeparableComponent {
    double weight = 0;
    DensityMatrix left;
    DensityMatrix right;
};

DensityMatrix separable_mixture(const std::vector<SeparableComponent>& components);

// |<X1 Y2> ± <X1 Z2>| <= 1 ± <Y1 Z2> for (X,Y,Z) = (A,B,C), (C,A,B), (B,C,A),
// evaluated on any two-particle state.
InequalityReport separable_clauses(const DensityMatrix& rho2, const UnitVector3& A,
                                   const UnitVector3& B, const UnitVector3& C);

// Same clauses on the mixture; rejects components whose left and right
// expectations of A, B or C differ.
InequalityReport separable_bound_check(const std::vector<SeparableComponent>& components,
                                       const UnitVector3& A, const UnitVector3& B,
                                       const UnitVector3& C);

struct CommutatorEntry {
    double max_entry_norm = 0;
    double spectral_norm = 0;
    double closed_form_error = 0;  // max-entry distance to the analytic commutator
};

struct UncertaintyEntry {
    double lhs = 0;         // (1 - <X>^2)(1 - <Y>^2)
    double rhs = 0;         // |<i[X,Y]>|^2 / 4
    double rhs_closed = 0;  // from single-spin expectations
    bool holds = true;
};

struct CommutatorReport {
    // Pairs (ab,ac), (ab,bc), (ac,bc) of X_uv = sigma1.u sigma2.v.
    std::array<CommutatorEntry, 3> commutators;
    std::array<UncertaintyEntry, 3> uncertainty;
};

CommutatorReport commutator_diagnostics(const UnitVector3& a, const UnitVector3& b,
                                        const UnitVector3& c, const DensityMatrix& rho2);

}  // namespace ebbi
