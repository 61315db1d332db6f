#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mwb/groupexpr.hpp"

namespace mwb {

struct Generator {
    std::string name;
    OrientationValue theta;
};

/// One factor of a relation word. Action means [y,v] v^e with the even
/// exponent e = 1 - theta(y) evaluated 2-adically on demand; Commutator is
/// the e = 0 case (theta(y) exactly 1); Square is u^2.
struct Factor {
    enum class Kind { Square, Commutator, Action };
    Kind kind;
    int a = -1; // Square: u; Commutator/Action: y
    int b = -1; // Commutator/Action: v
    OrientationValue theta = OrientationValue::plus1(); // Action: theta(y)

    static Factor square(int u) { return {Kind::Square, u, -1, OrientationValue::minus1()}; }
    static Factor commutator(int y, int v) { return {Kind::Commutator, y, v, OrientationValue::plus1()}; }
    static Factor action(int y, int v, OrientationValue theta_y);
};

using Word = std::vector<Factor>;

struct Presentation {
    std::vector<Generator> generators;
    std::vector<Word> relations;

    int index_of(std::string_view name) const; // -1 when absent
};

/// Canonical minimal presentation of a valid expression: generators named
/// x1, x2, ... across bricks in depth-first order, each semidirect node
/// contributing one generator z (z1, z2, ... when several) after its inner
/// expression; relations are the brick relations plus one action relation
/// [y,z] z^(1-theta(y)) per inner generator of each semidirect node.
Presentation presentation(const GroupExpr& expr);

std::string word_text(const Presentation& pres, const Word& word);

/// Generator classification by orientation class mod 4; z is the cyclic
/// generator of a root-level semidirect expression, reported separately.
struct GeneratorRoles {
    std::vector<int> u_list; // theta = -1 mod 4
    std::vector<int> v_list; // theta = +1 mod 4
    int z = -1;
};

GeneratorRoles generator_roles(const GroupExpr& expr);

/// Empty iff every relation is a product of Square(u) factors with
/// theta(u) = -1 exactly and [y,v] v^(1-theta(y)) factors with
/// theta(v) = 1 exactly.
std::vector<std::string> normal_form_violations(const Presentation& pres);

} // namespace mwb
