#include "paralab/field.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace paralab {

const char* field_func_name(FieldFunc f) {
    switch (f) {
        case FieldFunc::Exp: return "exp";
        case FieldFunc::Log: return "log";
        case FieldFunc::Sin: return "sin";
        case FieldFunc::Cos: return "cos";
        case FieldFunc::Tan: return "tan";
        case FieldFunc::Sinh: return "sinh";
        case FieldFunc::Cosh: return "cosh";
        case FieldFunc::Tanh: return "tanh";
        case FieldFunc::Sqrt: return "sqrt";
    }
    return "?";
}

FieldNodePtr raw_node(FieldOp op, FieldNodePtr a, FieldNodePtr b) {
    auto n = std::make_shared<FieldNode>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

FieldNodePtr raw_constant(double v) {
    auto n = std::make_shared<FieldNode>();
    n->op = FieldOp::Constant;
    n->number = v;
    return n;
}

FieldNodePtr raw_coordinate(int index) {
    auto n = std::make_shared<FieldNode>();
    n->op = FieldOp::Coordinate;
    n->coord = index;
    return n;
}

FieldNodePtr raw_func(FieldFunc func, FieldNodePtr a) {
    auto n = std::make_shared<FieldNode>();
    n->op = FieldOp::Func;
    n->func = func;
    n->a = std::move(a);
    return n;
}

ScalarField ScalarField::constant(double v) { return ScalarField(raw_constant(v)); }
ScalarField ScalarField::coordinate(int index) {
    if (index < 0) throw std::invalid_argument("ScalarField: negative coordinate index");
    return ScalarField(raw_coordinate(index));
}

// ---------------------------------------------------------------------------
// folding operator constructors

static bool node_is_const(const FieldNodePtr& n, double v) {
    return n->op == FieldOp::Constant && n->number == v;
}
static bool node_is_const(const FieldNodePtr& n) { return n->op == FieldOp::Constant; }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    if (node_is_const(a.node(), 0.0)) return b;
    if (node_is_const(b.node(), 0.0)) return a;
    if (node_is_const(a.node()) && node_is_const(b.node()))
        return ScalarField::constant(a.node()->number + b.node()->number);
    return ScalarField(raw_node(FieldOp::Add, a.node(), b.node()));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    if (node_is_const(b.node(), 0.0)) return a;
    if (node_is_const(a.node(), 0.0)) return -b;
    if (node_is_const(a.node()) && node_is_const(b.node()))
        return ScalarField::constant(a.node()->number - b.node()->number);
    return ScalarField(raw_node(FieldOp::Sub, a.node(), b.node()));
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    if (node_is_const(a.node(), 0.0) || node_is_const(b.node(), 0.0))
        return ScalarField::constant(0.0);
    if (node_is_const(a.node(), 1.0)) return b;
    if (node_is_const(b.node(), 1.0)) return a;
    if (node_is_const(a.node()) && node_is_const(b.node()))
        return ScalarField::constant(a.node()->number * b.node()->number);
    return ScalarField(raw_node(FieldOp::Mul, a.node(), b.node()));
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
    if (node_is_const(b.node(), 1.0)) return a;
    if (node_is_const(a.node()) && node_is_const(b.node()) && b.node()->number != 0.0)
        return ScalarField::constant(a.node()->number / b.node()->number);
    return ScalarField(raw_node(FieldOp::Div, a.node(), b.node()));
}

ScalarField operator-(const ScalarField& a) {
    if (node_is_const(a.node())) return ScalarField::constant(-a.node()->number);
    if (a.node()->op == FieldOp::Neg) return ScalarField(a.node()->a);
    return ScalarField(raw_node(FieldOp::Neg, a.node(), nullptr));
}

ScalarField pow(const ScalarField& base, const ScalarField& exponent) {
    if (node_is_const(exponent.node(), 1.0)) return base;
    if (node_is_const(exponent.node(), 0.0)) return ScalarField::constant(1.0);
    return ScalarField(raw_node(FieldOp::Pow, base.node(), exponent.node()));
}

ScalarField pow(const ScalarField& base, double exponent) {
    return pow(base, ScalarField::constant(exponent));
}

ScalarField apply_func(FieldFunc func, const ScalarField& f) {
    return ScalarField(raw_func(func, f.node()));
}

ScalarField exp(const ScalarField& f) { return apply_func(FieldFunc::Exp, f); }
ScalarField log(const ScalarField& f) { return apply_func(FieldFunc::Log, f); }
ScalarField sin(const ScalarField& f) { return apply_func(FieldFunc::Sin, f); }
ScalarField cos(const ScalarField& f) { return apply_func(FieldFunc::Cos, f); }
ScalarField tan(const ScalarField& f) { return apply_func(FieldFunc::Tan, f); }
ScalarField sinh(const ScalarField& f) { return apply_func(FieldFunc::Sinh, f); }
ScalarField cosh(const ScalarField& f) { return apply_func(FieldFunc::Cosh, f); }
ScalarField tanh(const ScalarField& f) { return apply_func(FieldFunc::Tanh, f); }
ScalarField sqrt(const ScalarField& f) { return apply_func(FieldFunc::Sqrt, f); }

// ---------------------------------------------------------------------------
// evaluation

int ScalarField::required_dim() const {
    struct Walk {
        static int run(const FieldNode* n) {
            if (!n) return 0;
            int d = n->op == FieldOp::Coordinate ? n->coord + 1 : 0;
            d = std::max(d, run(n->a.get()));
            d = std::max(d, run(n->b.get()));
            return d;
        }
    };
    return Walk::run(node_.get());
}

// True when the exponent is a literal whole number; such powers are computed
// by repeated multiplication and accept any base.
static bool integral_exponent(const FieldNode* e, long long& out) {
    if (e->op != FieldOp::Constant) return false;
    const double v = e->number;
    if (!std::isfinite(v) || v != std::nearbyint(v) || std::abs(v) > 1e9) return false;
    out = static_cast<long long>(v);
    return true;
}

static double eval_value_node(const FieldNode* n, std::span<const double> p);

static double eval_func_value(FieldFunc f, double u) {
    switch (f) {
        case FieldFunc::Exp: return std::exp(u);
        case FieldFunc::Log:
            if (u <= 0.0) throw EvalError("log of a nonpositive value");
            return std::log(u);
        case FieldFunc::Sin: return std::sin(u);
        case FieldFunc::Cos: return std::cos(u);
        case FieldFunc::Tan: {
            if (std::cos(u) == 0.0) throw EvalError("tan at a pole");
            return std::tan(u);
        }
        case FieldFunc::Sinh: return std::sinh(u);
        case FieldFunc::Cosh: return std::cosh(u);
        case FieldFunc::Tanh: return std::tanh(u);
        case FieldFunc::Sqrt:
            if (u <= 0.0) throw EvalError("sqrt of a nonpositive value");
            return std::sqrt(u);
    }
    throw EvalError("unknown function");
}

static double eval_value_node(const FieldNode* n, std::span<const double> p) {
    switch (n->op) {
        case FieldOp::Constant: return n->number;
        case FieldOp::Coordinate:
            if (n->coord >= static_cast<int>(p.size()))
                throw EvalError("coordinate index exceeds point dimension");
            return p[static_cast<size_t>(n->coord)];
        case FieldOp::Neg: return -eval_value_node(n->a.get(), p);
        case FieldOp::Add: return eval_value_node(n->a.get(), p) + eval_value_node(n->b.get(), p);
        case FieldOp::Sub: return eval_value_node(n->a.get(), p) - eval_value_node(n->b.get(), p);
        case FieldOp::Mul: return eval_value_node(n->a.get(), p) * eval_value_node(n->b.get(), p);
        case FieldOp::Div: {
            const double d = eval_value_node(n->b.get(), p);
            if (d == 0.0) throw EvalError("division by zero");
            return eval_value_node(n->a.get(), p) / d;
        }
        case FieldOp::Pow: {
            long long k;
            const double base = eval_value_node(n->a.get(), p);
            if (integral_exponent(n->b.get(), k)) {
                if (k == 0) return 1.0;
                if (k < 0) {
                    if (base == 0.0) throw EvalError("zero raised to a negative power");
                    double acc = 1.0;
                    for (long long i = 0; i < -k; ++i) acc *= base;
                    return 1.0 / acc;
                }
                double acc = base;
                for (long long i = 1; i < k; ++i) acc *= base;
                return acc;
            }
            const double e = eval_value_node(n->b.get(), p);
            if (base <= 0.0) throw EvalError("power with non-integer exponent needs a positive base");
            return std::exp(e * std::log(base));
        }
        case FieldOp::Func: return eval_func_value(n->func, eval_value_node(n->a.get(), p));
    }
    throw EvalError("unknown node");
}

double ScalarField::eval_value(std::span<const double> point) const {
    const double v = eval_value_node(node_.get(), point);
    if (!std::isfinite(v)) throw EvalError("evaluation produced a non-finite value");
    return v;
}

static Jet3 eval_jet_node(const FieldNode* n, std::span<const double> p) {
    const int dim = static_cast<int>(p.size());
    switch (n->op) {
        case FieldOp::Constant: return Jet3::constant(dim, n->number);
        case FieldOp::Coordinate:
            if (n->coord >= dim) throw EvalError("coordinate index exceeds point dimension");
            return Jet3::coordinate(dim, n->coord, p[static_cast<size_t>(n->coord)]);
        case FieldOp::Neg: return -eval_jet_node(n->a.get(), p);
        case FieldOp::Add: return eval_jet_node(n->a.get(), p) + eval_jet_node(n->b.get(), p);
        case FieldOp::Sub: return eval_jet_node(n->a.get(), p) - eval_jet_node(n->b.get(), p);
        case FieldOp::Mul: return eval_jet_node(n->a.get(), p) * eval_jet_node(n->b.get(), p);
        case FieldOp::Div: return eval_jet_node(n->a.get(), p) / eval_jet_node(n->b.get(), p);
        case FieldOp::Pow: {
            long long k;
            const Jet3 base = eval_jet_node(n->a.get(), p);
            if (integral_exponent(n->b.get(), k)) return base.pow_int(k);
            const Jet3 e = eval_jet_node(n->b.get(), p);
            const double u = base.value();
            if (u <= 0.0) throw EvalError("power with non-integer exponent needs a positive base");
            const Jet3 lg = base.compose(std::log(u), 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u));
            const Jet3 arg = e * lg;
            const double w = std::exp(arg.value());
            return arg.compose(w, w, w, w);
        }
        case FieldOp::Func: {
            const Jet3 u = eval_jet_node(n->a.get(), p);
            const double v = u.value();
            switch (n->func) {
                case FieldFunc::Exp: {
                    const double e = std::exp(v);
                    return u.compose(e, e, e, e);
                }
                case FieldFunc::Log: {
                    if (v <= 0.0) throw EvalError("log of a nonpositive value");
                    return u.compose(std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
                }
                case FieldFunc::Sin: {
                    const double s = std::sin(v), c = std::cos(v);
                    return u.compose(s, c, -s, -c);
                }
                case FieldFunc::Cos: {
                    const double s = std::sin(v), c = std::cos(v);
                    return u.compose(c, -s, -c, s);
                }
                case FieldFunc::Tan: {
                    if (std::cos(v) == 0.0) throw EvalError("tan at a pole");
                    const double t = std::tan(v), s = 1.0 + t * t;
                    return u.compose(t, s, 2.0 * t * s, s * (2.0 + 6.0 * t * t));
                }
                case FieldFunc::Sinh: {
                    const double s = std::sinh(v), c = std::cosh(v);
                    return u.compose(s, c, s, c);
                }
                case FieldFunc::Cosh: {
                    const double s = std::sinh(v), c = std::cosh(v);
                    return u.compose(c, s, c, s);
                }
                case FieldFunc::Tanh: {
                    const double t = std::tanh(v), s = 1.0 - t * t;
                    return u.compose(t, s, -2.0 * t * s, s * (6.0 * t * t - 2.0));
                }
                case FieldFunc::Sqrt: {
                    if (v <= 0.0) throw EvalError("sqrt of a nonpositive value");
                    const double s = std::sqrt(v);
                    return u.compose(s, 0.5 / s, -0.25 / (v * s), 0.375 / (v * v * s));
                }
            }
            throw EvalError("unknown function");
        }
    }
    throw EvalError("unknown node");
}

Jet3 ScalarField::eval_jet(std::span<const double> point) const {
    if (point.empty()) throw std::invalid_argument("eval_jet: empty point");
    Jet3 j = eval_jet_node(node_.get(), point);
    if (!j.finite()) throw EvalError("evaluation produced a non-finite value");
    return j;
}

// ---------------------------------------------------------------------------
// symbolic derivative

ScalarField ScalarField::derivative(int coord) const {
    const FieldNode* n = node_.get();
    const auto D = [coord](const FieldNodePtr& c) { return ScalarField(c).derivative(coord); };
    switch (n->op) {
        case FieldOp::Constant: return constant(0.0);
        case FieldOp::Coordinate: return constant(n->coord == coord ? 1.0 : 0.0);
        case FieldOp::Neg: return -D(n->a);
        case FieldOp::Add: return D(n->a) + D(n->b);
        case FieldOp::Sub: return D(n->a) - D(n->b);
        case FieldOp::Mul: return D(n->a) * ScalarField(n->b) + ScalarField(n->a) * D(n->b);
        case FieldOp::Div: {
            const ScalarField f(n->a), g(n->b);
            return (D(n->a) * g - f * D(n->b)) / (g * g);
        }
        case FieldOp::Pow: {
            const ScalarField f(n->a), g(n->b);
            if (node_is_const(n->b)) {
                const double k = n->b->number;
                return constant(k) * pow(f, k - 1.0) * D(n->a);
            }
            // f^g = exp(g log f):  (f^g)' = f^g (g' log f + g f'/f)
            return pow(f, g) * (D(n->b) * log(f) + g * D(n->a) / f);
        }
        case FieldOp::Func: {
            const ScalarField u(n->a);
            const ScalarField du = D(n->a);
            switch (n->func) {
                case FieldFunc::Exp: return exp(u) * du;
                case FieldFunc::Log: return du / u;
                case FieldFunc::Sin: return cos(u) * du;
                case FieldFunc::Cos: return -(sin(u) * du);
                case FieldFunc::Tan: return (constant(1.0) + tan(u) * tan(u)) * du;
                case FieldFunc::Sinh: return cosh(u) * du;
                case FieldFunc::Cosh: return sinh(u) * du;
                case FieldFunc::Tanh: return (constant(1.0) - tanh(u) * tanh(u)) * du;
                case FieldFunc::Sqrt: return du / (constant(2.0) * sqrt(u));
            }
            throw std::invalid_argument("derivative: unknown function");
        }
    }
    throw std::invalid_argument("derivative: unknown node");
}

// ---------------------------------------------------------------------------
// structure and printing

static bool same_node(const FieldNode* x, const FieldNode* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->op != y->op) return false;
    switch (x->op) {
        case FieldOp::Constant: return x->number == y->number;
        case FieldOp::Coordinate: return x->coord == y->coord;
        case FieldOp::Func:
            if (x->func != y->func) return false;
            break;
        default: break;
    }
    return same_node(x->a.get(), y->a.get()) && same_node(x->b.get(), y->b.get());
}

bool ScalarField::same_structure(const ScalarField& other) const {
    return same_node(node_.get(), other.node_.get());
}

namespace {

// Precedence levels used by the printer; must agree with the parser.
// 1 additive, 2 multiplicative, 3 unary minus, 4 power, 5 atom.
int node_prec(const FieldNode* n) {
    switch (n->op) {
        case FieldOp::Add:
        case FieldOp::Sub: return 1;
        case FieldOp::Mul:
        case FieldOp::Div: return 2;
        case FieldOp::Neg: return 3;
        case FieldOp::Pow: return 4;
        default: return 5;
    }
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(std::ostringstream& os, const FieldNode* n,
                std::span<const std::string> coords, bool parenthesize) {
    if (parenthesize) os << '(';
    switch (n->op) {
        case FieldOp::Constant:
            if (n->number < 0.0) {
                os << '-' << format_number(-n->number);
            } else {
                os << format_number(n->number);
            }
            break;
        case FieldOp::Coordinate:
            if (n->coord < static_cast<int>(coords.size())) {
                os << coords[static_cast<size_t>(n->coord)];
            } else {
                os << "x" << (n->coord + 1);
            }
            break;
        case FieldOp::Neg:
            os << '-';
            // operand of unary minus may be another unary or a power
            print_node(os, n->a.get(), coords, node_prec(n->a.get()) < 3);
            break;
        case FieldOp::Add:
        case FieldOp::Sub:
            print_node(os, n->a.get(), coords, node_prec(n->a.get()) < 1);
            os << (n->op == FieldOp::Add ? " + " : " - ");
            print_node(os, n->b.get(), coords, node_prec(n->b.get()) <= 1);
            break;
        case FieldOp::Mul:
        case FieldOp::Div:
            print_node(os, n->a.get(), coords, node_prec(n->a.get()) < 2);
            os << (n->op == FieldOp::Mul ? "*" : "/");
            print_node(os, n->b.get(), coords, node_prec(n->b.get()) <= 2);
            break;
        case FieldOp::Pow:
            // the base parses as an atom, the exponent as a unary
            print_node(os, n->a.get(), coords, node_prec(n->a.get()) < 5);
            os << '^';
            print_node(os, n->b.get(), coords, node_prec(n->b.get()) < 3);
            break;
        case FieldOp::Func:
            os << field_func_name(n->func) << '(';
            print_node(os, n->a.get(), coords, false);
            os << ')';
            break;
    }
    if (parenthesize) os << ')';
}

}  // namespace

std::string ScalarField::to_string(std::span<const std::string> coords) const {
    std::ostringstream os;
    print_node(os, node_.get(), coords, false);
    return os.str();
}

// ---------------------------------------------------------------------------
// finite-difference oracle

double fd_residual(const ScalarField& f, std::span<const double> point, int order, double step) {
    if (step <= 0.0) throw std::invalid_argument("fd_residual: step must be positive");
    if (order < 1 || order > 3) throw std::invalid_argument("fd_residual: order must be 1, 2 or 3");
    const int n = static_cast<int>(point.size());
    std::vector<double> q(point.begin(), point.end());
    const auto at = [&](std::initializer_list<std::pair<int, double>> shifts) {
        for (auto [i, s] : shifts) q[static_cast<size_t>(i)] += s;
        const double v = f.eval_value(q);
        for (auto [i, s] : shifts) q[static_cast<size_t>(i)] -= s;
        return v;
    };
    const Jet3 jet = f.eval_jet(point);
    const double h = step;
    double worst = 0.0;

    if (order == 1) {
        for (int i = 0; i < n; ++i) {
            const double fd = (at({{i, h}}) - at({{i, -h}})) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - jet.grad(i)));
        }
        return worst;
    }
    if (order == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double fd;
                if (i == j) {
                    fd = (at({{i, h}}) - 2.0 * at({}) + at({{i, -h}})) / (h * h);
                } else {
                    fd = (at({{i, h}, {j, h}}) - at({{i, h}, {j, -h}}) -
                          at({{i, -h}, {j, h}}) + at({{i, -h}, {j, -h}})) /
                         (4.0 * h * h);
                }
                worst = std::max(worst, std::abs(fd - jet.hess(i, j)));
            }
        return worst;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                double fd;
                if (i == j && j == k) {
                    fd = (at({{i, 2 * h}}) - 2.0 * at({{i, h}}) + 2.0 * at({{i, -h}}) -
                          at({{i, -2 * h}})) /
                         (2.0 * h * h * h);
                } else if (i == j || j == k || i == k) {
                    // two equal indices: second-difference in the repeated one,
                    // central first difference in the other
                    const int rep = (i == j || i == k) ? i : j;
                    const int oth = (rep == i) ? ((j == i) ? k : j) : i;
                    fd = (at({{rep, h}, {oth, h}}) - 2.0 * at({{oth, h}}) +
                          at({{rep, -h}, {oth, h}}) - at({{rep, h}, {oth, -h}}) +
                          2.0 * at({{oth, -h}}) - at({{rep, -h}, {oth, -h}})) /
                         (2.0 * h * h * h);
                } else {
                    fd = 0.0;
                    for (int s1 : {-1, 1})
                        for (int s2 : {-1, 1})
                            for (int s3 : {-1, 1})
                                fd += s1 * s2 * s3 *
                                      at({{i, s1 * h}, {j, s2 * h}, {k, s3 * h}});
                    fd /= 8.0 * h * h * h;
                }
                worst = std::max(worst, std::abs(fd - jet.third(i, j, k)));
            }
    return worst;
}

}  // namespace paralab
