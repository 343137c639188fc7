#include "hglue/invariants.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace hglue {

namespace {

std::string str(const Rational& q)
{
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

void require_model_range(int genus, int punctures)
{
    if (genus < 0 || punctures < 0 || 2 * genus - 2 + 2 * punctures <= 0)
        throw InvalidInput("model bundle needs 2g - 2 + 2s > 0, got g = " + std::to_string(genus) +
                           ", s = " + std::to_string(punctures));
}

const std::vector<ParabolicWeight> kHalf{{Rational(1, 2), 1}};

} // namespace

void validate(const ParabolicBundleData& b)
{
    if (b.genus < 0 || b.punctures < 0)
        throw InvalidInput("negative genus or puncture count");
    if (b.rank < 1 || b.rank > 2)
        throw InvalidInput("rank must be 1 or 2");
    if (static_cast<int>(b.weights.size()) != b.punctures)
        throw InvalidInput("one weight list per puncture expected");
    for (const auto& list : b.weights) {
        int total = 0;
        for (size_t i = 0; i < list.size(); ++i) {
            const auto& w = list[i];
            if (w.weight < Rational(0) || w.weight >= Rational(1))
                throw InvalidInput("weight " + str(w.weight) + " outside [0, 1)");
            if (w.multiplicity <= 0)
                throw InvalidInput("multiplicities must be positive");
            if (i > 0 && !(list[i - 1].weight < w.weight))
                throw InvalidInput("weights must be strictly increasing");
            total += w.multiplicity;
        }
        if (total != b.rank)
            throw InvalidInput("multiplicities at a puncture must sum to the rank");
    }
}

ParabolicBundleData uniform_bundle(int genus, int punctures, int rank, Rational degree,
                                   const std::vector<ParabolicWeight>& weightsAtEach)
{
    ParabolicBundleData b;
    b.genus = genus;
    b.punctures = punctures;
    b.rank = rank;
    b.baseDegree = degree;
    b.weights.assign(std::max(punctures, 0), weightsAtEach);
    validate(b);
    return b;
}

Rational parabolic_degree(const ParabolicBundleData& b)
{
    validate(b);
    Rational d = b.baseDegree;
    for (const auto& list : b.weights)
        for (const auto& w : list)
            d += w.weight * w.multiplicity;
    return d;
}

ParabolicBundleData direct_sum(const ParabolicBundleData& a, const ParabolicBundleData& b)
{
    validate(a);
    validate(b);
    if (a.genus != b.genus || a.punctures != b.punctures)
        throw InvalidInput("direct sum needs the same curve and divisor");
    ParabolicBundleData out;
    out.genus = a.genus;
    out.punctures = a.punctures;
    out.rank = a.rank + b.rank;
    out.baseDegree = a.baseDegree + b.baseDegree;
    for (int x = 0; x < a.punctures; ++x) {
        std::map<Rational, int> merged;
        for (const auto& w : a.weights[x]) merged[w.weight] += w.multiplicity;
        for (const auto& w : b.weights[x]) merged[w.weight] += w.multiplicity;
        std::vector<ParabolicWeight> list;
        for (const auto& [w, m] : merged) list.push_back({w, m});
        out.weights.push_back(std::move(list));
    }
    validate(out);
    return out;
}

ParabolicBundleData parabolic_dual(const ParabolicBundleData& b)
{
    validate(b);
    ParabolicBundleData out = b;
    out.baseDegree = -b.baseDegree;
    for (auto& list : out.weights) {
        for (auto& w : list) {
            if (w.weight != Rational(0)) {
                out.baseDegree -= w.multiplicity;
                w.weight = Rational(1) - w.weight;
            }
        }
        std::sort(list.begin(), list.end(),
                  [](const ParabolicWeight& l, const ParabolicWeight& r) { return l.weight < r.weight; });
    }
    return out;
}

ParabolicBundleData twist(const ParabolicBundleData& b, long long e)
{
    validate(b);
    ParabolicBundleData out = b;
    out.baseDegree += Rational(e * b.rank);
    return out;
}

long long log_canonical_degree(int genus, int punctures) { return 2LL * genus - 2 + punctures; }

namespace {

ParabolicBundleData model_from_n(const ParabolicBundleData& n)
{
    return direct_sum(n, twist(parabolic_dual(n), log_canonical_degree(n.genus, n.punctures)));
}

} // namespace

ParabolicBundleData irreducible_model_bundle(int genus, int punctures)
{
    require_model_range(genus, punctures);
    return model_from_n(uniform_bundle(genus, punctures, 1, 3 * (genus - 1) + punctures, kHalf));
}

ParabolicBundleData diagonal_model_bundle(int genus, int punctures)
{
    require_model_range(genus, punctures);
    return model_from_n(uniform_bundle(genus, punctures, 1, genus - 1, kHalf));
}

ParabolicBundleData irreducible_model_bundle_explicit(int genus, int punctures)
{
    require_model_range(genus, punctures);
    const auto l3i = uniform_bundle(genus, punctures, 1, 3 * (genus - 1) + punctures, kHalf);
    const auto liDual = uniform_bundle(genus, punctures, 1, -(genus - 1 + punctures), kHalf);
    return direct_sum(l3i, liDual);
}

ParabolicBundleData diagonal_model_bundle_explicit(int genus, int punctures)
{
    require_model_range(genus, punctures);
    const auto l = uniform_bundle(genus, punctures, 1, genus - 1, kHalf);
    return direct_sum(l, l);
}

MilnorWood milnor_wood_check(Rational tau, int genus, int punctures)
{
    const long long bound = log_canonical_degree(genus, punctures);
    if (genus < 0 || punctures < 0 || bound <= 0)
        throw InvalidInput("Milnor-Wood bound needs 2g - 2 + s > 0");
    const Rational b(bound);
    const Rational mag = tau < Rational(0) ? -tau : tau;
    return {mag <= b, mag == b, b};
}

Rational connected_sum_degree(Rational d1, Rational d2) { return d1 + d2; }

bool admissible_splitting(int g1, int g2, int s)
{
    return g1 >= 1 && g2 >= 1 && s >= 1 && 2 * g1 - 2 + 2 * s > 0 && 2 * g2 - 2 + 2 * s > 0;
}

ComponentClass classify_hybrid(int g1, int g2, int s)
{
    if (!admissible_splitting(g1, g2, s))
        throw InvalidInput("hybrid gluing needs g1, g2, s >= 1");
    ComponentClass c;
    c.genusTotal = g1 + g2 + s - 1;
    const long long g = c.genusTotal;
    c.toledo = connected_sum_degree(Rational(log_canonical_degree(g1, s)), Rational(log_canonical_degree(g2, s)));
    if (c.toledo != Rational(2 * g - 2))
        throw InternalError("connected sum Toledo " + str(c.toledo) + " is not maximal");

    // deg N = par deg(L1^3 iota1) + par deg(L2), then untwist by a square root of K
    const Rational degN = parabolic_degree(uniform_bundle(g1, s, 1, 3 * (g1 - 1) + s, kHalf)) +
                          parabolic_degree(uniform_bundle(g2, s, 1, g2 - 1, kHalf));
    const Rational viaN = degN - Rational(g - 1);
    const long long closed = 2LL * g1 + s - 2;
    const long long viaK = log_canonical_degree(g1, s);
    if (viaN != Rational(closed) || viaK != closed)
        throw InternalError("deg L evaluations disagree: " + str(viaN) + ", " + std::to_string(closed) + ", " +
                            std::to_string(viaK));
    c.degL = closed;
    if (c.degL < s || c.degL > 2 * g - s - 2)
        throw InternalError("deg L = " + std::to_string(c.degL) + " outside [s, 2g - s - 2]");
    c.exceptional = c.degL > 0 && c.degL < 2 * g - 2;
    c.w1Zero = true;
    return c;
}

Census component_census(int genus)
{
    if (genus < 2)
        throw InvalidInput("census needs g >= 2");
    if (genus > 30)
        throw InvalidInput("census limited to g <= 30");
    const long long g = genus;
    return {3 * (1LL << (2 * g)) + 2 * g - 4, 2 * g - 3, 0, 2 * g - 2};
}

std::vector<CoverageRow> coverage_sweep(int gMax)
{
    if (gMax < 2)
        throw InvalidInput("coverage sweep needs gMax >= 2");
    std::vector<CoverageRow> rows;
    for (int g = 2; g <= gMax; ++g) {
        CoverageRow row{g, {}, component_census(g).exceptional, 0, false};
        for (int g1 = 0; g1 <= g; ++g1) {
            for (int g2 = 0; g1 + g2 <= g + 1; ++g2) {
                const int s = g + 1 - g1 - g2;
                if (!admissible_splitting(g1, g2, s))
                    continue;
                ++row.splittings;
                const ComponentClass c = classify_hybrid(g1, g2, s);
                if (c.exceptional)
                    row.attained.insert(c.degL);
            }
        }
        std::set<long long> all;
        for (long long d = 1; d <= 2LL * g - 3; ++d) all.insert(d);
        row.covers = row.attained == all;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace hglue
