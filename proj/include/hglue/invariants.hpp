#pragma once

#include <set>
#include <vector>

#include <boost/rational.hpp>

#include "hglue/errors.hpp"

namespace hglue {

using Rational = boost::rational<long long>;

// Raised when an arithmetic identity that holds by construction fails.
class InternalError : public Error {
public:
    using Error::Error;
    const char* name() const noexcept override { return "InternalError"; }
};

struct ParabolicWeight {
    Rational weight;  // in [0, 1)
    int multiplicity;
};

struct ParabolicBundleData {
    int genus = 0;
    int punctures = 0;
    int rank = 1;
    Rational baseDegree = 0;
    // one strictly increasing list per puncture; multiplicities sum to rank
    std::vector<std::vector<ParabolicWeight>> weights;
};
void validate(const ParabolicBundleData& b);

// rank r bundle of degree d with the same weight list at every puncture
ParabolicBundleData uniform_bundle(int genus, int punctures, int rank, Rational degree,
                                   const std::vector<ParabolicWeight>& weightsAtEach);

// deg E + sum over punctures of k_i alpha_i
Rational parabolic_degree(const ParabolicBundleData& b);

ParabolicBundleData direct_sum(const ParabolicBundleData& a, const ParabolicBundleData& b);
// Parabolic dual: nonzero weights alpha go to 1 - alpha and each one lowers
// the degree by its multiplicity. par deg(dual) = -par deg.
ParabolicBundleData parabolic_dual(const ParabolicBundleData& b);
// tensor with an ordinary line bundle of degree e
ParabolicBundleData twist(const ParabolicBundleData& b, long long e);
// degree of K(D): 2g - 2 + s
long long log_canonical_degree(int genus, int punctures);

// Maximal models V = N + N^dual K(D), weight 1/2 at every puncture, L^2 = K.
// Irreducible embedding: N = L^3 iota. Diagonal embedding: N = L.
ParabolicBundleData irreducible_model_bundle(int genus, int punctures);
ParabolicBundleData diagonal_model_bundle(int genus, int punctures);
// the same bundles written out as (L^3 iota) + (L iota)^* and L + L
ParabolicBundleData irreducible_model_bundle_explicit(int genus, int punctures);
ParabolicBundleData diagonal_model_bundle_explicit(int genus, int punctures);

struct MilnorWood {
    bool holds;
    bool maximal;
    Rational bound;  // 2g - 2 + s
};
MilnorWood milnor_wood_check(Rational tau, int genus, int punctures);

Rational connected_sum_degree(Rational d1, Rational d2);

struct ComponentClass {
    int genusTotal;
    Rational toledo;
    long long degL;
    bool exceptional;
    bool w1Zero;
};
// splittings entering the sweep: g_i >= 1, s >= 1 and 2 g_i - 2 + 2 s > 0
bool admissible_splitting(int g1, int g2, int s);
// left side carries the irreducible model
ComponentClass classify_hybrid(int g1, int g2, int s);

struct Census {
    long long total;
    long long exceptional;
    long long degMin, degMax;
};
Census component_census(int genus);

struct CoverageRow {
    int genus;
    std::set<long long> attained;  // exceptional degL values reached by some splitting
    long long exceptional;         // from the census
    int splittings;
    bool covers;  // attained == {1, ..., 2g-3}
};
std::vector<CoverageRow> coverage_sweep(int gMax);

} // namespace hglue
