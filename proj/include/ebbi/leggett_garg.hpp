#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <tuple>

#include "ebbi/dataset.hpp"
#include "ebbi/inequality.hpp"

namespace ebbi {

struct LGParams {
    double omega = 1.0;
    double dt1 = 0, dt2 = 0, dt3 = 0;

    void validate() const;
};

// Flux qubit plus three probe spins, 16-dim space ordered |q n1 n2 n3>
// with q slowest and up = index bit 0. Only 8 components are nonzero.
//
//   k  amplitude            state
//   0   c3 c2 c1            |up up up up>
//   1  -c3 c2 s1            |dn dn dn dn>
//   2   i c3 s2 c1          |dn up dn dn>
//   3  -i c3 s2 s1          |up dn up up>
//   4   s3 c2 c1            |dn up up dn>
//   5   s3 c2 s1            |up dn dn up>
//   6  -i s3 s2 c1          |up up dn up>
//   7  -i s3 s2 s1          |dn dn up dn>
//
// with ck = cos(omega dtk), sk = sin(omega dtk).
struct LGAmplitudes {
    std::array<std::complex<double>, 8> amp{};
    static const std::array<int, 8> basis;  // 16-dim index of term k

    Eigen::VectorXcd state_vector() const;
    double norm2() const;
};

std::string lg_basis_label(int k);

LGAmplitudes evolve_triple(const LGParams& p);

// Closed forms (E12, E13, E23) for one triple experiment.
std::tuple<double, double, double> lg_triple_correlations(const LGParams& p);
// <sigma^z_i sigma^z_j> of the probe spins, computed from the state vector.
std::tuple<double, double, double> lg_triple_correlations_from_state(const LGAmplitudes& a);
// Closed forms (E, E^, E~) for separate pair experiments.
std::tuple<double, double, double> lg_pair_correlations(const LGParams& p);

InequalityReport lg_inequality_check(double K12, double K13, double K23);

// Probabilities of the 8 probe triples (S1,S2,S3), flux qubit traced out.
std::array<double, 8> lg_triple_probabilities(const LGParams& p);

DichotomicDataset sample_triples(const LGParams& p, std::size_t M, std::uint64_t seed);

}  // namespace ebbi
