#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "gxrepair/error.hpp"

namespace gxr {

struct PathExpr;
struct NodeExpr;
using PathPtr = std::shared_ptr<const PathExpr>;
using NodePtr = std::shared_ptr<const NodeExpr>;

// Implies, Plus and WildcardInverse are surface sugar; desugar() removes them.
enum class PathKind : std::uint8_t {
    Epsilon,
    Wildcard,
    Label,
    Inverse,
    Test,
    Concat,
    Union,
    Intersect,
    Star,
    Complement,
    Counter,
    Implies,
    Plus,
    WildcardInverse,
};

enum class NodeKind : std::uint8_t {
    Not,
    And,
    Or,
    Exists,
    DataEq,
    DataNeq,
    PathEq,
    PathNeq,
    Implies,
};

struct PathExpr {
    PathKind kind;
    std::string label;      // Label, Inverse
    PathPtr lhs;            // unary operand or left operand
    PathPtr rhs;
    NodePtr test;           // Test
    std::uint32_t min = 0;  // Counter
    std::uint32_t max = 0;
};

struct NodeExpr {
    NodeKind kind;
    std::string value;  // DataEq, DataNeq
    NodePtr lhs;        // Not operand or left operand
    NodePtr rhs;
    PathPtr path;       // Exists, PathEq, PathNeq
    PathPtr path2;      // PathEq, PathNeq
};

enum class ConstraintKind : std::uint8_t { Path, Node };

struct Constraint {
    ConstraintKind kind;
    PathPtr path;
    NodePtr node;

    static Constraint of(PathPtr p) { return {ConstraintKind::Path, std::move(p), nullptr}; }
    static Constraint of(NodePtr n) { return {ConstraintKind::Node, nullptr, std::move(n)}; }
};

namespace path {

inline PathPtr make(PathExpr e) { return std::make_shared<const PathExpr>(std::move(e)); }

inline PathPtr eps() { return make({PathKind::Epsilon, {}, {}, {}, {}}); }
inline PathPtr any() { return make({PathKind::Wildcard, {}, {}, {}, {}}); }
inline PathPtr label(std::string l) { return make({PathKind::Label, std::move(l), {}, {}, {}}); }
inline PathPtr inverse(std::string l) { return make({PathKind::Inverse, std::move(l), {}, {}, {}}); }
inline PathPtr test(NodePtr n) { return make({PathKind::Test, {}, {}, {}, std::move(n)}); }
inline PathPtr concat(PathPtr a, PathPtr b) { return make({PathKind::Concat, {}, std::move(a), std::move(b), {}}); }
inline PathPtr alt(PathPtr a, PathPtr b) { return make({PathKind::Union, {}, std::move(a), std::move(b), {}}); }
inline PathPtr meet(PathPtr a, PathPtr b) { return make({PathKind::Intersect, {}, std::move(a), std::move(b), {}}); }
inline PathPtr star(PathPtr a) { return make({PathKind::Star, {}, std::move(a), {}, {}}); }
inline PathPtr complement(PathPtr a) { return make({PathKind::Complement, {}, std::move(a), {}, {}}); }
inline PathPtr implies(PathPtr a, PathPtr b) { return make({PathKind::Implies, {}, std::move(a), std::move(b), {}}); }
inline PathPtr plus(PathPtr a) { return make({PathKind::Plus, {}, std::move(a), {}, {}}); }
inline PathPtr any_inverse() { return make({PathKind::WildcardInverse, {}, {}, {}, {}}); }

inline PathPtr counter(PathPtr a, std::uint32_t n, std::uint32_t m)
{
    if (n > m)
        throw InvalidArgument("counter lower bound " + std::to_string(n) + " exceeds upper bound " + std::to_string(m));
    return make({PathKind::Counter, {}, std::move(a), {}, {}, n, m});
}

} // namespace path

namespace node {

inline NodePtr make(NodeExpr e) { return std::make_shared<const NodeExpr>(std::move(e)); }

inline NodePtr negate(NodePtr a) { return make({NodeKind::Not, {}, std::move(a), {}, {}, {}}); }
inline NodePtr both(NodePtr a, NodePtr b) { return make({NodeKind::And, {}, std::move(a), std::move(b), {}, {}}); }
inline NodePtr either(NodePtr a, NodePtr b) { return make({NodeKind::Or, {}, std::move(a), std::move(b), {}, {}}); }
inline NodePtr implies(NodePtr a, NodePtr b) { return make({NodeKind::Implies, {}, std::move(a), std::move(b), {}, {}}); }
inline NodePtr exists(PathPtr p) { return make({NodeKind::Exists, {}, {}, {}, std::move(p), {}}); }
inline NodePtr data_eq(std::string c) { return make({NodeKind::DataEq, std::move(c), {}, {}, {}, {}}); }
inline NodePtr data_neq(std::string c) { return make({NodeKind::DataNeq, std::move(c), {}, {}, {}, {}}); }
inline NodePtr path_eq(PathPtr p, PathPtr q) { return make({NodeKind::PathEq, {}, {}, {}, std::move(p), std::move(q)}); }
inline NodePtr path_neq(PathPtr p, PathPtr q) { return make({NodeKind::PathNeq, {}, {}, {}, std::move(p), std::move(q)}); }

} // namespace node

bool equal(const PathPtr& a, const PathPtr& b);
bool equal(const NodePtr& a, const NodePtr& b);

inline bool equal(const PathPtr& a, const PathPtr& b)
{
    if (a == b)
        return true;
    if (!a || !b || a->kind != b->kind)
        return false;
    return a->label == b->label && a->min == b->min && a->max == b->max && equal(a->lhs, b->lhs) &&
           equal(a->rhs, b->rhs) && equal(a->test, b->test);
}

inline bool equal(const NodePtr& a, const NodePtr& b)
{
    if (a == b)
        return true;
    if (!a || !b || a->kind != b->kind)
        return false;
    return a->value == b->value && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs) && equal(a->path, b->path) &&
           equal(a->path2, b->path2);
}

inline bool equal(const Constraint& a, const Constraint& b)
{
    return a.kind == b.kind && equal(a.path, b.path) && equal(a.node, b.node);
}

} // namespace gxr
