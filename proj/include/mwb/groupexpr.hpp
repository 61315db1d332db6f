#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mwb/orientation.hpp"

namespace mwb {

class GroupExpr;
using GroupExprPtr = std::shared_ptr<const GroupExpr>;

/// Elementary-type expression tree: free and Demushkin bricks combined by
/// free products and Z_2-semidirect extensions. Trees are immutable.
class GroupExpr {
public:
    enum class DemushkinCase : int { I = 1, II = 2, III = 3, IV = 4 };

    struct Free {
        std::vector<OrientationValue> theta; // one per generator, d = size
    };
    struct Demushkin {
        DemushkinCase dcase;
        int d;
        int f; // OrientationValue::kInfinity allowed
    };
    struct FreeProduct {
        GroupExprPtr left, right;
    };
    struct Semidirect {
        GroupExprPtr inner;
    };
    using Node = std::variant<Free, Demushkin, FreeProduct, Semidirect>;

    explicit GroupExpr(Node node) : node_(std::move(node)) {}

    static GroupExprPtr trivial();
    static GroupExprPtr c2(); // Demushkin case IV, d = 1
    static GroupExprPtr free_group(std::vector<OrientationValue> theta);
    static GroupExprPtr demushkin(DemushkinCase dcase, int d, int f);
    static GroupExprPtr product(GroupExprPtr left, GroupExprPtr right);
    static GroupExprPtr semidirect(GroupExprPtr inner);

    const Node& node() const { return node_; }

    bool is_c2() const;
    bool is_trivial_brick() const;

    int generator_count() const;
    int brick_count() const;       // nonempty Free/Demushkin leaves
    int semidirect_count() const;
    bool contains_demushkin_d2() const; // any Demushkin node with d >= 2
    bool contains_c2() const;

private:
    Node node_;
};

struct Violation {
    std::string path;
    std::string message;
};

struct ValidationResult {
    std::vector<Violation> violations;
    std::vector<std::string> notes;
    bool ok() const { return violations.empty(); }
};

ValidationResult validate(const GroupExpr& expr);

} // namespace mwb
