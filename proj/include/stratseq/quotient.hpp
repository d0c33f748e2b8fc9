#pragma once

#include "stratseq/error.hpp"
#include "stratseq/graded.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace stratseq {

/// The reductive groups acting in the quotient computations. Rational
/// cohomology of each is an exterior algebra; a generator of degree 2r-1
/// carries twist -r.
enum class GroupKey {
    GL2,
    SL2,
    PGL2,
    Cstar,
    GL2xCstar,
    QuadricAutId, // identity component of the quadric surface automorphisms,
                  // isogenous to C* x SL2 x SL2
};

inline const char* to_string(GroupKey g)
{
    switch (g) {
        case GroupKey::GL2: return "GL2";
        case GroupKey::SL2: return "SL2";
        case GroupKey::PGL2: return "PGL2";
        case GroupKey::Cstar: return "Cstar";
        case GroupKey::GL2xCstar: return "GL2xCstar";
        case GroupKey::QuadricAutId: return "QuadricAutId";
    }
    return "?";
}

inline GroupKey group_from_string(const std::string& s)
{
    if (s == "GL2")
        return GroupKey::GL2;
    if (s == "SL2")
        return GroupKey::SL2;
    if (s == "PGL2")
        return GroupKey::PGL2;
    if (s == "Cstar" || s == "C*")
        return GroupKey::Cstar;
    if (s == "GL2xCstar")
        return GroupKey::GL2xCstar;
    if (s == "QuadricAutId")
        return GroupKey::QuadricAutId;
    fail(ErrorKind::UnknownKey, "unknown group '" + s + "'");
}

inline std::vector<int> exterior_generator_degrees(GroupKey g)
{
    switch (g) {
        case GroupKey::GL2: return {1, 3};
        case GroupKey::SL2: return {3};
        case GroupKey::PGL2: return {3};
        case GroupKey::Cstar: return {1};
        case GroupKey::GL2xCstar: return {1, 1, 3};
        case GroupKey::QuadricAutId: return {1, 3, 3};
    }
    return {};
}

/// Exterior-algebra expansion of the group cohomology: one class per subset
/// of generators, degrees and twists adding up.
inline GradedTateModule group_cohomology(GroupKey g)
{
    auto degrees = exterior_generator_degrees(g);
    GradedTateModule out = GradedTateModule::unit();
    for (int deg : degrees) {
        int r = (deg + 1) / 2;
        GradedTateModule factor =
            add(GradedTateModule::unit(), GradedTateModule({{deg, -r, 1}}));
        out = tensor(out, factor);
    }
    return out;
}

/// Exact division of graded tables: the unique Q with tensor(Q, hG) = hX.
/// Runs on the two-variable generating polynomial; hG must have unit
/// constant term, so the minimal-degree term of the remainder always forces
/// the next quotient term. A forced negative term or a nonzero remainder
/// means the factorization does not exist.
inline GradedTateModule leray_hirsch_divide(const GradedTateModule& hX,
                                            const GradedTateModule& hG)
{
    if (hG.multiplicity(0, 0) != 1)
        fail(ErrorKind::NotDivisible, "divisor must have a simple unit in degree 0");

    std::map<DegTwist, Int> remainder;
    for (const auto& [key, mult] : hX.entries())
        remainder[key] = mult;
    std::vector<WeightedClass> quotient;

    while (!remainder.empty()) {
        auto it = remainder.begin(); // minimal (degree, twist)
        const auto [d, w] = it->first;
        Int m = it->second;
        if (m < 0) {
            std::ostringstream os;
            os << "remainder forces negative multiplicity " << m.get_str() << " at degree " << d
               << ", twist " << w;
            fail(ErrorKind::NotDivisible, os.str());
        }
        quotient.push_back({d, w, m});
        for (const auto& [gk, gm] : hG.entries()) {
            DegTwist at{d + gk.first, w + gk.second};
            remainder[at] -= m * gm;
            if (remainder[at] == 0)
                remainder.erase(at);
        }
    }
    GradedTateModule q(std::move(quotient));
    if (tensor(q, hG) != hX)
        fail(ErrorKind::NotDivisible, "re-multiplication check failed");
    return q;
}

/// Keep the classes fixed by the involution: classes tagged -1 are removed,
/// untagged classes default to +1. With require_all set, every class must
/// carry an explicit tag.
inline GradedTateModule invariant_part(const GradedTateModule& h,
                                       const std::map<DegTwist, int>& characters,
                                       bool require_all = false)
{
    std::vector<WeightedClass> kept;
    for (const auto& c : h.classes()) {
        auto it = characters.find({c.degree, c.twist});
        if (it == characters.end()) {
            if (require_all)
                fail(ErrorKind::MissingCharacter,
                     "class at degree " + std::to_string(c.degree) + ", twist " +
                         std::to_string(c.twist) + " has no character tag");
            kept.push_back(c);
            continue;
        }
        if (it->second != 1 && it->second != -1)
            fail(ErrorKind::Inconsistent, "characters must be +1 or -1");
        if (it->second == 1)
            kept.push_back(c);
    }
    return GradedTateModule(std::move(kept));
}

} // namespace stratseq
