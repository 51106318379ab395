#include "ebbi/quantum.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ebbi/error.hpp"

namespace ebbi {

namespace {

constexpr Complex kI{0.0, 1.0};

bool valid_dim(Eigen::Index d) { return d == 2 || d == 4 || d == 8 || d == 16; }

int particles_for_dim(int dim) {
    int n = 0;
    while ((1 << n) < dim) ++n;
    return n;
}

void check_sign(int s) {
    if (s != 1 && s != -1) throw InvalidInput("outcome must be +1 or -1");
}

ComplexSquareMatrix op1(const ComplexSquareMatrix& m, int particle) { return embed(m, particle, 2); }

Eigen::Vector3d spin_vector(const DensityMatrix& rho, int particle) {
    const int n = rho.particles();
    return {rho.expectation(embed(pauli_x(), particle, n)),
            rho.expectation(embed(pauli_y(), particle, n)),
            rho.expectation(embed(pauli_z(), particle, n))};
}

}  // namespace

ComplexSquareMatrix::ComplexSquareMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || !valid_dim(m_.rows()))
        throw InvalidInput("matrix dimension must be 2, 4, 8 or 16");
    if (!m_.allFinite()) throw InvalidInput("matrix has non-finite entries");
}

ComplexSquareMatrix ComplexSquareMatrix::identity(int dim) {
    return ComplexSquareMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

ComplexSquareMatrix ComplexSquareMatrix::adjoint() const { return ComplexSquareMatrix(m_.adjoint()); }

double ComplexSquareMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

double ComplexSquareMatrix::spectral_norm() const {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m_);
    return svd.singularValues()(0);
}

ComplexSquareMatrix operator*(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in product");
    return ComplexSquareMatrix(a.m_ * b.m_);
}

ComplexSquareMatrix operator+(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in sum");
    return ComplexSquareMatrix(a.m_ + b.m_);
}

ComplexSquareMatrix operator-(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidInput("dimension mismatch in difference");
    return ComplexSquareMatrix(a.m_ - b.m_);
}

ComplexSquareMatrix operator*(Complex s, const ComplexSquareMatrix& a) {
    return ComplexSquareMatrix(s * a.m_);
}

ComplexSquareMatrix kron(const ComplexSquareMatrix& a, const ComplexSquareMatrix& b) {
    const int da = a.dim(), db = b.dim();
    Eigen::MatrixXcd out(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a(i, j) * b.eigen();
    return ComplexSquareMatrix(std::move(out));
}

ComplexSquareMatrix embed(const ComplexSquareMatrix& op, int particle, int n) {
    if (op.dim() != 2) throw InvalidInput("embed expects a one-particle operator");
    if (n < 1 || n > 4 || particle < 1 || particle > n) throw InvalidInput("bad particle index");
    const auto id = ComplexSquareMatrix::identity(2);
    ComplexSquareMatrix out = particle == 1 ? op : id;
    for (int k = 2; k <= n; ++k) out = kron(out, k == particle ? op : id);
    return out;
}

UnitVector3::UnitVector3(double x, double y, double z) : v_(x, y, z) {
    if (!v_.allFinite() || std::abs(v_.norm() - 1.0) > kTol)
        throw InvalidInput("vector is not of unit length");
}

UnitVector3 UnitVector3::from_xz_angle(double theta) {
    const Eigen::Vector3d v(std::sin(theta), 0.0, std::cos(theta));
    return normalized(v);
}

UnitVector3 UnitVector3::normalized(const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (!(n > 0) || !std::isfinite(n)) throw InvalidInput("cannot normalize a zero vector");
    const Eigen::Vector3d u = v / n;
    return UnitVector3(u.x(), u.y(), u.z());
}

DensityMatrix::DensityMatrix(ComplexSquareMatrix m) : m_(std::move(m)), n_(particles_for_dim(m_.dim())) {
    const auto& e = m_.eigen();
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kTol) throw InvalidInput("state is not Hermitian");
    if (std::abs(e.trace() - Complex(1.0, 0.0)) > kTol) throw InvalidInput("state trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
    if (es.eigenvalues().minCoeff() < -1e-10) throw InvalidInput("state is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const double nrm = psi.norm();
    if (std::abs(nrm - 1.0) > kTol) throw InvalidInput("state vector is not normalized");
    return DensityMatrix(ComplexSquareMatrix(psi * psi.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    if (n < 1 || n > 4) throw InvalidInput("particle count must be 1..4");
    const int d = 1 << n;
    return DensityMatrix(ComplexSquareMatrix(Eigen::MatrixXcd::Identity(d, d) / double(d)));
}

DensityMatrix DensityMatrix::from_bloch(const Eigen::Vector3d& x) {
    if (!(x.norm() <= 1.0 + kTol)) throw InvalidInput("Bloch vector longer than 1");
    auto m = ComplexSquareMatrix::identity(2) + pauli_dot_vec(x);
    return DensityMatrix(Complex(0.5) * m);
}

double DensityMatrix::expectation(const ComplexSquareMatrix& op) const {
    return expectation_complex(op).real();
}

Complex DensityMatrix::expectation_complex(const ComplexSquareMatrix& op) const {
    if (op.dim() != m_.dim()) throw InvalidInput("operator dimension does not match state");
    return (m_.eigen() * op.eigen()).trace();
}

ProbabilityTable::ProbabilityTable(int n, std::vector<double> p) : n_(n), p_(std::move(p)) {
    if (n_ < 1 || n_ > 4 || p_.size() != (std::size_t{1} << n_))
        throw InvalidInput("probability table size mismatch");
    for (double x : p_)
        if (!(x >= -kTol && x <= 1.0 + kTol)) throw InvalidInput("probability outside [0,1]");
    if (std::abs(std::accumulate(p_.begin(), p_.end(), 0.0) - 1.0) > 1e-10)
        throw InvalidInput("probabilities do not sum to 1");
}

double ProbabilityTable::mean(int i) const {
    double m = 0;
    for (std::size_t k = 0; k < p_.size(); ++k) m += sign_at(int(k), n_, i) * p_[k];
    return m;
}

double ProbabilityTable::correlation(int i, int j) const {
    double m = 0;
    for (std::size_t k = 0; k < p_.size(); ++k)
        m += sign_at(int(k), n_, i) * sign_at(int(k), n_, j) * p_[k];
    return m;
}

FuncTable2 ProbabilityTable::to_func2() const {
    if (n_ != 2) throw InvalidInput("table arity is not 2");
    FuncTable2 f;
    for (int k = 0; k < 4; ++k) f.v[std::size_t(k)] = p_[std::size_t(k)];
    return f;
}

FuncTable3 ProbabilityTable::to_func3() const {
    if (n_ != 3) throw InvalidInput("table arity is not 3");
    FuncTable3 f;
    for (int k = 0; k < 8; ++k) f.v[std::size_t(k)] = p_[std::size_t(k)];
    return f;
}

ComplexSquareMatrix pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return ComplexSquareMatrix(m);
}

ComplexSquareMatrix pauli_y() {
    Eigen::Matrix2cd m;
    m << 0, -kI, kI, 0;
    return ComplexSquareMatrix(m);
}

ComplexSquareMatrix pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return ComplexSquareMatrix(m);
}

ComplexSquareMatrix pauli_dot_vec(const Eigen::Vector3d& v) {
    Eigen::Matrix2cd m;
    m << v.z(), Complex(v.x(), -v.y()), Complex(v.x(), v.y()), -v.z();
    return ComplexSquareMatrix(m);
}

ComplexSquareMatrix pauli_dot(const UnitVector3& a) { return pauli_dot_vec(a.vec()); }

ComplexSquareMatrix projector(int s, const UnitVector3& a) {
    check_sign(s);
    return Complex(0.5) * (ComplexSquareMatrix::identity(2) + Complex(s) * pauli_dot(a));
}

Eigen::VectorXcd singlet_vector() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);   // |+->
    psi(2) = -1.0 / std::sqrt(2.0);  // |-+>
    return psi;
}

DensityMatrix singlet() { return DensityMatrix::pure(singlet_vector()); }

ProbabilityTable diag_prob(const DensityMatrix& rho) {
    const int d = rho.matrix().dim();
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) p[std::size_t(k)] = rho.matrix()(k, k).real();
    return ProbabilityTable(rho.particles(), std::move(p));
}

Eigen::Vector3d bloch_vector(const DensityMatrix& rho1) {
    if (rho1.particles() != 1) throw InvalidInput("expected a one-particle state");
    return spin_vector(rho1, 1);
}

ProbabilityTable filter_prob2(const DensityMatrix& rho1, const UnitVector3& a, const UnitVector3& b) {
    if (rho1.particles() != 1) throw InvalidInput("filtering needs a one-particle state");
    std::vector<double> p(4);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            auto chain = projector(s1, a) * projector(s2, b) * projector(s1, a);
            p[std::size_t(sign_index({s1, s2}))] = rho1.expectation(chain);
        }
    return ProbabilityTable(2, std::move(p));
}

ProbabilityTable filter_prob3(const DensityMatrix& rho1, const UnitVector3& a, const UnitVector3& b,
                              const UnitVector3& c) {
    if (rho1.particles() != 1) throw InvalidInput("filtering needs a one-particle state");
    std::vector<double> p(8);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1}) {
                auto chain = projector(s1, a) * projector(s2, b) * projector(s3, c) *
                             projector(s2, b) * projector(s1, a);
                p[std::size_t(sign_index({s1, s2, s3}))] = rho1.expectation(chain);
            }
    return ProbabilityTable(3, std::move(p));
}

ProbabilityTable filter_prob2_closed(const Eigen::Vector3d& x, const UnitVector3& a,
                                     const UnitVector3& b) {
    const double xa = x.dot(a.vec()), ab = a.dot(b);
    std::vector<double> p(4);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            p[std::size_t(sign_index({s1, s2}))] = (1 + s1 * xa + s2 * xa * ab + s1 * s2 * ab) / 4.0;
    return ProbabilityTable(2, std::move(p));
}

ProbabilityTable filter_prob3_closed(const Eigen::Vector3d& x, const UnitVector3& a,
                                     const UnitVector3& b, const UnitVector3& c) {
    const double xa = x.dot(a.vec()), ab = a.dot(b), bc = b.dot(c);
    std::vector<double> p(8);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int s3 : {1, -1})
                p[std::size_t(sign_index({s1, s2, s3}))] =
                    (1 + s1 * xa) * (1 + s1 * s2 * ab) * (1 + s2 * s3 * bc) / 8.0;
    return ProbabilityTable(3, std::move(p));
}

double pair_correlation(const DensityMatrix& rho, const UnitVector3& u, const UnitVector3& v) {
    if (rho.particles() != 2) throw InvalidInput("expected a two-particle state");
    return rho.expectation(kron(pauli_dot(u), pauli_dot(v)));
}

std::array<ProbabilityTable, 3> eprb_pair_tables(const UnitVector3& a, const UnitVector3& b,
                                                 const UnitVector3& c) {
    const auto rho = singlet();
    auto table = [&](const UnitVector3& u, const UnitVector3& v) {
        std::vector<double> p(4);
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                p[std::size_t(sign_index({s1, s2}))] =
                    rho.expectation(kron(projector(s1, u), projector(s2, v)));
        return ProbabilityTable(2, std::move(p));
    };
    return {table(a, b), table(a, c), table(b, c)};
}

SchwartzReport schwartz_bound(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c) {
    const auto rho = singlet();
    SchwartzReport r;
    r.E = pair_correlation(rho, a, b);
    r.Ehat = pair_correlation(rho, a, c);
    r.Etilde = pair_correlation(rho, b, c);
    const double bc = b.dot(c);
    auto side = [&](int sign) {
        SchwartzSide s;
        const double sum = r.E + sign * r.Ehat;
        s.lhs = sum * sum;
        s.rhs = 2.0 * (1.0 + sign * bc);
        const Eigen::Vector3d w = b.vec() + sign * c.vec();
        const double wn = w.norm();
        s.cos2 = wn > 1e-12 ? std::pow(a.vec().dot(w) / wn, 2) : 0.0;
        s.holds = s.lhs <= s.rhs + kTol;
        s.equality = std::abs(s.lhs - s.rhs) <= 1e-10;
        return s;
    };
    r.plus = side(1);
    r.minus = side(-1);
    r.cos2_sum = r.plus.cos2 + r.minus.cos2;
    const Eigen::Vector3d n = b.vec().cross(c.vec());
    r.a_in_span = n.norm() > 1e-12 ? std::abs(a.vec().dot(n / n.norm())) <= 1e-10
                                   : std::abs(std::abs(a.dot(b)) - 1.0) <= 1e-10;
    r.combined_equality = std::abs(r.cos2_sum - 1.0) <= 1e-10;
    return r;
}

Complex extended_eprb_amplitude(double ta, double tb, double tc, int s1, int s2, int s3) {
    check_sign(s1);
    check_sign(s2);
    check_sign(s3);
    const double sba = std::sin((tb - ta) / 2), cba = std::cos((tb - ta) / 2);
    const double scb = std::sin((tc - tb) / 2), ccb = std::cos((tc - tb) / 2);
    const double first = ((1 + s1 * s2) * sba + s2 * (1 - s1 * s2) * cba) / (2 * std::sqrt(2.0));
    const double second = ((1 + s2 * s3) * ccb + s2 * (1 - s2 * s3) * scb) / 2;
    return {first * second, 0.0};
}

ExtendedEprb3 extended_eprb_prob3(double ta, double tb, double tc) {
    std::vector<double> p(8);
    double norm = 0;
    for (int k = 0; k < 8; ++k) {
        const auto phi = extended_eprb_amplitude(ta, tb, tc, sign_at(k, 3, 1), sign_at(k, 3, 2),
                                                 sign_at(k, 3, 3));
        p[std::size_t(k)] = std::norm(phi);
        norm += p[std::size_t(k)];
    }
    if (std::abs(norm - 1.0) > kTol) throw std::logic_error("amplitudes are not normalized");
    ProbabilityTable t(3, std::move(p));
    const auto coeffs = expand3(t.to_func3());
    return {std::move(t), coeffs, norm};
}

ProbabilityTable extended_eprb_prob3_closed(double ta, double tb, double tc) {
    const double cab = std::cos(tb - ta), cbc = std::cos(tc - tb);
    std::vector<double> p(8);
    for (int k = 0; k < 8; ++k) {
        const int s1 = sign_at(k, 3, 1), s2 = sign_at(k, 3, 2), s3 = sign_at(k, 3, 3);
        p[std::size_t(k)] = (1 - s1 * s2 * cab - s1 * s3 * cab * cbc + s2 * s3 * cbc) / 8.0;
    }
    return ProbabilityTable(3, std::move(p));
}

ProbabilityTable extended_eprb_prob3_chain(const UnitVector3& a, const UnitVector3& b,
                                           const UnitVector3& c) {
    const auto rho = singlet();
    std::vector<double> p(8);
    for (int k = 0; k < 8; ++k) {
        const int s1 = sign_at(k, 3, 1), s2 = sign_at(k, 3, 2), s3 = sign_at(k, 3, 3);
        const auto Ma = op1(projector(s1, a), 1);
        const auto Mb = op1(projector(s2, b), 2);
        const auto Mc = op1(projector(s3, c), 2);
        p[std::size_t(k)] = rho.expectation(Ma * Mb * Mc * Mb * Ma);
    }
    return ProbabilityTable(3, std::move(p));
}

ExtendedEprb4 extended_eprb_prob4(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c,
                                  const UnitVector3& d) {
    const auto rho = singlet();
    std::vector<double> p(16);
    for (int k = 0; k < 16; ++k) {
        const int s1 = sign_at(k, 4, 1), s2 = sign_at(k, 4, 2), s3 = sign_at(k, 4, 3),
                  s4 = sign_at(k, 4, 4);
        const auto Ma = op1(projector(s1, a), 1);
        const auto Md = op1(projector(s4, d), 1);
        const auto Mb = op1(projector(s2, b), 2);
        const auto Mc = op1(projector(s3, c), 2);
        p[std::size_t(k)] = rho.expectation(Ma * Md * Mb * Mc * Mb * Md * Ma);
    }
    ProbabilityTable t(4, std::move(p));
    PairCorrelations4 e{t.correlation(1, 2), t.correlation(1, 3), t.correlation(1, 4),
                        t.correlation(2, 3), t.correlation(2, 4), t.correlation(3, 4)};
    return {std::move(t), e};
}

PairCorrelations4 extended_eprb_prob4_closed(const UnitVector3& a, const UnitVector3& b,
                                             const UnitVector3& c, const UnitVector3& d) {
    const double ab = a.dot(b), bc = b.dot(c), ad = a.dot(d);
    return {-ab, -ab * bc, ad, bc, -ab * ad, -ab * ad * bc};
}

DensityMatrix separable_mixture(const std::vector<SeparableComponent>& components) {
    if (components.empty()) throw InvalidInput("no components");
    double total = 0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    for (const auto& c : components) {
        if (!(c.weight >= 0)) throw InvalidInput("negative weight");
        if (c.left.particles() != 1 || c.right.particles() != 1)
            throw InvalidInput("components must be one-particle states");
        total += c.weight;
        m += c.weight * kron(c.left.matrix(), c.right.matrix()).eigen();
    }
    if (std::abs(total - 1.0) > kTol) throw InvalidInput("weights must sum to 1");
    return DensityMatrix(ComplexSquareMatrix(m));
}

InequalityReport separable_clauses(const DensityMatrix& rho2, const UnitVector3& A,
                                   const UnitVector3& B, const UnitVector3& C) {
    InequalityReport r;
    r.family = Family::boole_triple;
    struct Cyc { const char* x; const char* y; const char* z; const UnitVector3* X; const UnitVector3* Y; const UnitVector3* Z; };
    const Cyc cycles[] = {{"A", "B", "C", &A, &B, &C}, {"C", "A", "B", &C, &A, &B},
                          {"B", "C", "A", &B, &C, &A}};
    for (const auto& c : cycles) {
        const double xy = pair_correlation(rho2, *c.X, *c.Y);
        const double xz = pair_correlation(rho2, *c.X, *c.Z);
        const double yz = pair_correlation(rho2, *c.Y, *c.Z);
        const std::string X = c.x, Y = c.y, Z = c.z;
        r.add("|<" + X + "1 " + Y + "2> + <" + X + "1 " + Z + "2>| <= 1 + <" + Y + "1 " + Z + "2>",
              std::abs(xy + xz), 1.0 + yz);
        r.add("|<" + X + "1 " + Y + "2> - <" + X + "1 " + Z + "2>| <= 1 - <" + Y + "1 " + Z + "2>",
              std::abs(xy - xz), 1.0 - yz);
    }
    return r;
}

InequalityReport separable_bound_check(const std::vector<SeparableComponent>& components,
                                       const UnitVector3& A, const UnitVector3& B,
                                       const UnitVector3& C) {
    const auto rho = separable_mixture(components);
    for (std::size_t k = 0; k < components.size(); ++k) {
        const auto& c = components[k];
        const std::pair<const char*, const UnitVector3*> obs[] = {{"A", &A}, {"B", &B}, {"C", &C}};
        for (const auto& [name, u] : obs) {
            const auto s = pauli_dot(*u);
            const double l = c.left.expectation(s), r = c.right.expectation(s);
            if (std::abs(l - r) > kTol)
                throw InvalidInput("component " + std::to_string(k) + ": left and right <" + name +
                                   "> differ (" + std::to_string(l) + " vs " + std::to_string(r) + ")");
        }
    }
    return separable_clauses(rho, A, B, C);
}

CommutatorReport commutator_diagnostics(const UnitVector3& a, const UnitVector3& b,
                                        const UnitVector3& c, const DensityMatrix& rho2) {
    if (rho2.particles() != 2) throw InvalidInput("expected a two-particle state");
    const auto Xab = kron(pauli_dot(a), pauli_dot(b));
    const auto Xac = kron(pauli_dot(a), pauli_dot(c));
    const auto Xbc = kron(pauli_dot(b), pauli_dot(c));
    const Eigen::Vector3d axb = a.vec().cross(b.vec()), bxc = b.vec().cross(c.vec());
    const double ab = a.dot(b), bc = b.dot(c);
    const Complex two_i = 2.0 * kI;

    const std::array<ComplexSquareMatrix, 3> closed{
        two_i * op1(pauli_dot_vec(bxc), 2),
        two_i * (op1(pauli_dot_vec(bc * axb), 1) + op1(pauli_dot_vec(ab * bxc), 2)),
        two_i * op1(pauli_dot_vec(axb), 1)};
    const std::array<std::pair<const ComplexSquareMatrix*, const ComplexSquareMatrix*>, 3> pairs{
        {{&Xab, &Xac}, {&Xab, &Xbc}, {&Xac, &Xbc}}};

    const Eigen::Vector3d s1 = spin_vector(rho2, 1), s2 = spin_vector(rho2, 2);
    const std::array<double, 3> closed_rhs{std::pow(bxc.dot(s2), 2),
                                           std::pow(bc * axb.dot(s1) + ab * bxc.dot(s2), 2),
                                           std::pow(axb.dot(s1), 2)};

    CommutatorReport r;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& X = *pairs[k].first;
        const auto& Y = *pairs[k].second;
        const auto comm = X * Y - Y * X;
        r.commutators[k] = {comm.max_abs(), comm.spectral_norm(), (comm - closed[k]).max_abs()};
        const double ex = rho2.expectation(X), ey = rho2.expectation(Y);
        UncertaintyEntry u;
        u.lhs = (1 - ex * ex) * (1 - ey * ey);
        u.rhs = std::norm(rho2.expectation_complex(kI * comm)) / 4.0;
        u.rhs_closed = closed_rhs[k];
        u.holds = u.lhs >= u.rhs - 1e-10;
        r.uncertainty[k] = u;
    }
    return r;
}

}  // namespace ebbi
