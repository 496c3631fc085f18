#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "paralab/jet.hpp"

namespace paralab {

enum class FieldOp {
    Constant,
    Coordinate,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,   // rhs an arbitrary expression; constant integral exponents use repeated multiplication
    Func,
};

enum class FieldFunc { Exp, Log, Sin, Cos, Tan, Sinh, Cosh, Tanh, Sqrt };

const char* field_func_name(FieldFunc f);

struct FieldNode;
using FieldNodePtr = std::shared_ptr<const FieldNode>;

struct FieldNode {
    FieldOp op = FieldOp::Constant;
    double number = 0.0;             // Constant
    int coord = -1;                  // Coordinate
    FieldFunc func = FieldFunc::Exp; // Func
    FieldNodePtr a, b;
};

// A scalar function of the chart coordinates, stored as a shared immutable
// expression tree.  Evaluation produces either a plain value or a Jet3 with
// derivatives through order 3; the two paths are written independently so
// finite differences of eval_value can cross-check eval_jet.
class ScalarField {
public:
    ScalarField() : ScalarField(constant(0.0)) {}
    explicit ScalarField(FieldNodePtr node) : node_(std::move(node)) {}

    static ScalarField constant(double v);
    static ScalarField coordinate(int index);

    const FieldNodePtr& node() const { return node_; }

    // Smallest point dimension this field can be evaluated at.
    int required_dim() const;

    double eval_value(std::span<const double> point) const;
    Jet3 eval_jet(std::span<const double> point) const;

    // Exact symbolic partial derivative with respect to coordinate `coord`.
    ScalarField derivative(int coord) const;

    bool same_structure(const ScalarField& other) const;

    // Prints in the manifest expression grammar; reparsing the result yields
    // an equal tree up to the sign representation of negative literals.
    std::string to_string(std::span<const std::string> coords) const;

    bool is_constant(double v) const {
        return node_->op == FieldOp::Constant && node_->number == v;
    }

private:
    FieldNodePtr node_;
};

// Operator constructors fold the trivial constant cases (0 + f, 1 * f,
// constant op constant, ...) so symbolic derivatives stay readable.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);

inline ScalarField operator+(const ScalarField& a, double s) { return a + ScalarField::constant(s); }
inline ScalarField operator*(double s, const ScalarField& a) { return ScalarField::constant(s) * a; }

ScalarField pow(const ScalarField& base, const ScalarField& exponent);
ScalarField pow(const ScalarField& base, double exponent);
ScalarField exp(const ScalarField& f);
ScalarField log(const ScalarField& f);
ScalarField sin(const ScalarField& f);
ScalarField cos(const ScalarField& f);
ScalarField tan(const ScalarField& f);
ScalarField sinh(const ScalarField& f);
ScalarField cosh(const ScalarField& f);
ScalarField tanh(const ScalarField& f);
ScalarField sqrt(const ScalarField& f);
ScalarField apply_func(FieldFunc func, const ScalarField& f);

// Raw node constructors used by the parser: no constant folding, so the
// parsed tree mirrors the source text and round-trips through printing.
FieldNodePtr raw_node(FieldOp op, FieldNodePtr a, FieldNodePtr b);
FieldNodePtr raw_constant(double v);
FieldNodePtr raw_coordinate(int index);
FieldNodePtr raw_func(FieldFunc func, FieldNodePtr a);

// Central finite differences of eval_value against the jet coefficients of
// the given order (1, 2 or 3); returns the largest absolute deviation.
double fd_residual(const ScalarField& f, std::span<const double> point, int order, double step);

}  // namespace paralab
