#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "pinn/errors.hpp"

namespace pinn::ad {

class Tape;

/// Handle to one tape node. Cheap to copy; only valid while its tape lives.
struct Var {
    Tape* tape = nullptr;
    std::uint32_t node = 0;

    double value() const;
};

inline double value_of(const Var& v) { return v.value(); }

/// Reverse-mode tape: a DAG of scalar nodes in topological order (parents
/// always precede children, by construction of the recording). Each node
/// stores its value, up to two parent references with the local partial
/// derivatives, and an operation tag. One backward sweep seeded with 1 at a
/// scalar root leaves dRoot/dLeaf in every leaf's adjoint.
///
/// Not thread-safe; use one tape per thread.
class Tape {
public:
    enum class Op : std::uint8_t {
        leaf, constant,
        add, sub, mul, div, neg,
        add_c, sub_c, rsub_c, mul_c, div_c, rdiv_c,
        exp, tanh, erf,
    };

    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    /// Registered parameter leaf; gradient() reports these in registration order.
    Var leaf(double value) {
        Var v = push(Op::leaf, value, npos, npos, 0.0, 0.0);
        leaves_.push_back(v.node);
        return v;
    }

    /// Input node that is not a differentiation target.
    Var constant(double value) { return push(Op::constant, value, npos, npos, 0.0, 0.0); }

    std::size_t size() const { return value_.size(); }
    std::size_t leaf_count() const { return leaves_.size(); }

    double value(Var v) const { return value_[v.node]; }
    double adjoint(Var v) const { return adjoint_[v.node]; }
    Op op(Var v) const { return op_[v.node]; }

    /// Reverse sweep from a scalar root. Adjoints are reset first, so
    /// replaying the same tape is bitwise reproducible.
    void backward(Var root);

    /// backward() + the adjoints of all registered leaves, in registration
    /// order. Leaves that do not reach the root get exactly 0.
    std::vector<double> gradient(Var root);

    /// Drops every node but keeps allocated capacity.
    void clear();

    Var unary(Op op, Var a, double value, double da) {
        return push(op, value, a.node, npos, da, 0.0);
    }
    Var binary(Op op, Var a, Var b, double value, double da, double db) {
        return push(op, value, a.node, b.node, da, db);
    }

private:
    static constexpr std::uint32_t npos = 0xffffffffu;

    Var push(Op op, double value, std::uint32_t p0, std::uint32_t p1, double d0, double d1) {
        auto idx = static_cast<std::uint32_t>(value_.size());
        value_.push_back(value);
        adjoint_.push_back(0.0);
        parent0_.push_back(p0);
        parent1_.push_back(p1);
        partial0_.push_back(d0);
        partial1_.push_back(d1);
        op_.push_back(op);
        return Var{this, idx};
    }

    std::vector<double> value_;
    std::vector<double> adjoint_;
    std::vector<std::uint32_t> parent0_;
    std::vector<std::uint32_t> parent1_;
    std::vector<double> partial0_;
    std::vector<double> partial1_;
    std::vector<Op> op_;
    std::vector<std::uint32_t> leaves_;
};

inline double Var::value() const { return tape->value(*this); }

inline Var operator+(Var a, Var b) {
    return a.tape->binary(Tape::Op::add, a, b, a.value() + b.value(), 1.0, 1.0);
}
inline Var operator-(Var a, Var b) {
    return a.tape->binary(Tape::Op::sub, a, b, a.value() - b.value(), 1.0, -1.0);
}
inline Var operator*(Var a, Var b) {
    return a.tape->binary(Tape::Op::mul, a, b, a.value() * b.value(), b.value(), a.value());
}
inline Var operator/(Var a, Var b) {
    double bv = b.value();
    if (bv == 0.0) throw NumericError("tape division by zero-valued variable");
    double q = a.value() / bv;
    return a.tape->binary(Tape::Op::div, a, b, q, 1.0 / bv, -q / bv);
}

inline Var operator-(Var a) { return a.tape->unary(Tape::Op::neg, a, -a.value(), -1.0); }

inline Var operator+(Var a, double c) { return a.tape->unary(Tape::Op::add_c, a, a.value() + c, 1.0); }
inline Var operator+(double c, Var a) { return a + c; }
inline Var operator-(Var a, double c) { return a.tape->unary(Tape::Op::sub_c, a, a.value() - c, 1.0); }
inline Var operator-(double c, Var a) { return a.tape->unary(Tape::Op::rsub_c, a, c - a.value(), -1.0); }
inline Var operator*(Var a, double c) { return a.tape->unary(Tape::Op::mul_c, a, a.value() * c, c); }
inline Var operator*(double c, Var a) { return a * c; }
inline Var operator/(Var a, double c) {
    if (c == 0.0) throw NumericError("tape division by zero scalar");
    return a.tape->unary(Tape::Op::div_c, a, a.value() / c, 1.0 / c);
}
inline Var operator/(double c, Var a) {
    double av = a.value();
    if (av == 0.0) throw NumericError("tape division by zero-valued variable");
    return a.tape->unary(Tape::Op::rdiv_c, a, c / av, -c / (av * av));
}

inline Var exp(Var a) {
    double e = std::exp(a.value());
    return a.tape->unary(Tape::Op::exp, a, e, e);
}
inline Var tanh(Var a) {
    double th = std::tanh(a.value());
    return a.tape->unary(Tape::Op::tanh, a, th, 1.0 - th * th);
}
inline Var erf(Var a) {
    constexpr double two_over_sqrt_pi = 1.1283791670955126;
    double v = a.value();
    return a.tape->unary(Tape::Op::erf, a, std::erf(v), two_over_sqrt_pi * std::exp(-v * v));
}

} // namespace pinn::ad
