#include "amot/parse.hpp"

#include <cctype>
#include <cstring>
#include <memory>

namespace amot {

uint64_t FieldSpec::q() const {
    uint64_t v = 1;
    for (uint32_t i = 0; i < e; ++i) v *= p;
    return v;
}

std::string FieldSpec::to_string() const {
    std::string s = "GF(" + std::to_string(q());
    if (finite) {
        if (d != 1) s += "^" + std::to_string(d);
        return s + ")";
    }
    return s + ")(theta)";
}

namespace {

struct Tok {
    enum Kind { Num, Ident, Op, End } kind = End;
    uint64_t num = 0;
    std::string id;
    char op = 0;
    size_t pos = 0;
};

std::vector<Tok> lex(const std::string& s) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t j = i;
            uint64_t v = 0;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
                if (v > (UINT64_MAX - 9) / 10) throw ParseError("integer literal too large", i);
                v = v * 10 + uint64_t(s[j] - '0');
                ++j;
            }
            out.push_back({Tok::Num, v, "", 0, i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, 0, s.substr(i, j - i), 0, i});
            i = j;
            continue;
        }
        if (std::strchr("+-*/^()", ch)) {
            out.push_back({Tok::Op, 0, "", ch, i});
            ++i;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", i);
    }
    out.push_back({Tok::End, 0, "", 0, s.size()});
    return out;
}

struct Node {
    enum Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow } kind = Num;
    uint64_t num = 0;
    std::string var;
    std::unique_ptr<Node> a, b;
    uint64_t exp = 0;
    size_t pos = 0;
};
using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
    explicit Parser(const std::string& s) : toks_(lex(s)) {}

    NodePtr run() {
        if (toks_.size() == 1) throw ParseError("empty expression", 0);
        NodePtr e = expr();
        if (cur().kind != Tok::End) throw ParseError("trailing input", cur().pos);
        return e;
    }

private:
    const Tok& cur() const { return toks_[i_]; }

    bool eat(char op) {
        if (cur().kind == Tok::Op && cur().op == op) {
            ++i_;
            return true;
        }
        return false;
    }

    static NodePtr bin(Node::Kind k, NodePtr a, NodePtr b, size_t pos) {
        NodePtr n = std::make_unique<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        n->pos = pos;
        return n;
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            size_t pos = cur().pos;
            if (eat('+'))
                e = bin(Node::Add, std::move(e), term(), pos);
            else if (eat('-'))
                e = bin(Node::Sub, std::move(e), term(), pos);
            else
                return e;
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            size_t pos = cur().pos;
            if (eat('*'))
                e = bin(Node::Mul, std::move(e), unary(), pos);
            else if (eat('/'))
                e = bin(Node::Div, std::move(e), unary(), pos);
            else
                return e;
        }
    }

    NodePtr unary() {
        size_t pos = cur().pos;
        if (eat('-')) {
            NodePtr n = std::make_unique<Node>();
            n->kind = Node::Neg;
            n->a = unary();
            n->pos = pos;
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr e = atom();
        while (cur().kind == Tok::Op && cur().op == '^') {
            size_t pos = cur().pos;
            ++i_;
            if (cur().kind != Tok::Num)
                throw ParseError("exponent must be a nonnegative integer", cur().pos);
            if (cur().num > 256) throw ParseError("exponent too large", cur().pos);
            NodePtr n = std::make_unique<Node>();
            n->kind = Node::Pow;
            n->a = std::move(e);
            n->exp = cur().num;
            n->pos = pos;
            ++i_;
            e = std::move(n);
        }
        return e;
    }

    NodePtr atom() {
        const Tok& t = cur();
        if (t.kind == Tok::Num) {
            NodePtr n = std::make_unique<Node>();
            n->kind = Node::Num;
            n->num = t.num;
            n->pos = t.pos;
            ++i_;
            return n;
        }
        if (t.kind == Tok::Ident) {
            NodePtr n = std::make_unique<Node>();
            n->kind = Node::Var;
            n->var = t.id;
            n->pos = t.pos;
            ++i_;
            return n;
        }
        if (t.kind == Tok::Op && t.op == '(') {
            ++i_;
            NodePtr e = expr();
            if (!eat(')')) throw ParseError("expected ')'", cur().pos);
            return e;
        }
        throw ParseError("expected a value", t.pos);
    }

    std::vector<Tok> toks_;
    size_t i_ = 0;
};

template <class D>
typename D::Value eval_node(const Node* n, const D& d) {
    switch (n->kind) {
        case Node::Num:
            return d.from_int(n->num);
        case Node::Var:
            return d.var(n->var, n->pos);
        case Node::Add:
            return d.add(eval_node(n->a.get(), d), eval_node(n->b.get(), d));
        case Node::Sub:
            return d.sub(eval_node(n->a.get(), d), eval_node(n->b.get(), d));
        case Node::Mul:
            return d.mul(eval_node(n->a.get(), d), eval_node(n->b.get(), d));
        case Node::Div:
            return d.div(eval_node(n->a.get(), d), eval_node(n->b.get(), d), n->pos);
        case Node::Neg:
            return d.neg(eval_node(n->a.get(), d));
        case Node::Pow:
            return d.pow(eval_node(n->a.get(), d), n->exp, n->pos);
    }
    throw InternalError("unreachable expression node");
}

struct RatDomain {
    using Value = RationalFunc;
    const FieldTower* tw;
    std::string varname;
    uint32_t level = 1;

    Value from_int(uint64_t v) const {
        return RationalFunc::constant(tw, tw->from_int(int64_t(v % tw->p()), level));
    }
    Value var(const std::string& name, size_t pos) const {
        if (name == varname) return RationalFunc::var(tw, level);
        if (name == "y" || name == "g") return RationalFunc::constant(tw, tw->gen(level));
        if (name == "x" || name == "b") return RationalFunc::constant(tw, tw->base_gen(level));
        throw ParseError("unknown variable '" + name + "'", pos);
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
    Value div(const Value& a, const Value& b, size_t pos) const {
        if (b.is_zero()) throw ParseError("division by zero", pos);
        return a / b;
    }
    Value pow(const Value& a, uint64_t k, size_t pos) const {
        if (a.is_zero() && k == 0) throw ParseError("0^0 is undefined", pos);
        return a.pow(int64_t(k));
    }
};

struct ElemDomain {
    using Value = FieldElement;
    const FieldTower* tw;
    uint32_t level;

    Value from_int(uint64_t v) const { return tw->from_int(int64_t(v % tw->p()), level); }
    Value var(const std::string& name, size_t pos) const {
        if (name == "y" || name == "g") return tw->gen(level);
        if (name == "x" || name == "b") return tw->base_gen(level);
        throw ParseError("unknown variable '" + name + "' (field elements use x, y)", pos);
    }
    Value add(const Value& a, const Value& b) const { return tw->add(a, b); }
    Value sub(const Value& a, const Value& b) const { return tw->sub(a, b); }
    Value mul(const Value& a, const Value& b) const { return tw->mul(a, b); }
    Value neg(const Value& a) const { return tw->neg(a); }
    Value div(const Value& a, const Value& b, size_t pos) const {
        if (tw->is_zero(b)) throw ParseError("division by zero", pos);
        return tw->mul(a, tw->inv(b));
    }
    Value pow(const Value& a, uint64_t k, size_t) const { return tw->pow(a, k); }
};

// Coefficient identifiers over an A-field, shared by the twisted and
// rational-in-t domains.
std::optional<KElem> coefficient_var(const AField* K, const std::string& name) {
    if (name == "theta") return K->theta();
    const FieldTower* tw = K->tower();
    if (K->is_finite()) {
        uint32_t d = K->degree();
        if (name == "y" || name == "g") return KElem(tw->gen(d));
        if (name == "x" || name == "b") return KElem(tw->base_gen(d));
        return std::nullopt;
    }
    if (name == K->var_name()) return KElem(RationalFunc::var(tw));
    return std::nullopt;
}

struct TwistedDomain {
    using Value = TwistedPoly;
    const AField* K;

    Value from_int(uint64_t v) const {
        return TwistedPoly::constant(K, K->from_int(int64_t(v % K->tower()->p())));
    }
    Value var(const std::string& name, size_t pos) const {
        if (name == "T") return TwistedPoly::tau(K);
        if (auto c = coefficient_var(K, name)) return TwistedPoly::constant(K, *c);
        throw ParseError("unknown variable '" + name + "'", pos);
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
    Value div(const Value& a, const Value& b, size_t pos) const {
        if (a.deg() > 0 || b.deg() > 0)
            throw ParseError("'/' in K{T} is defined between constants only", pos);
        if (b.is_zero()) throw ParseError("division by zero", pos);
        return TwistedPoly::constant(K, K->mul(a.coeff(0), K->inv(b.coeff(0))));
    }
    Value pow(const Value& a, uint64_t k, size_t pos) const {
        if (uint64_t(a.deg() > 0 ? a.deg() : 0) * k > 64)
            throw ParseError("tau-degree too large", pos);
        return a.pow(k);
    }
};

struct KRatDomain {
    using Value = KRat;
    const AField* K;

    Value from_int(uint64_t v) const {
        return KRat::constant(K, K->from_int(int64_t(v % K->tower()->p())));
    }
    Value var(const std::string& name, size_t pos) const {
        if (name == "t") return KRat::t(K);
        if (auto c = coefficient_var(K, name)) return KRat::constant(K, *c);
        throw ParseError("unknown variable '" + name + "'", pos);
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
    Value div(const Value& a, const Value& b, size_t pos) const {
        if (b.is_zero()) throw ParseError("division by zero", pos);
        return a / b;
    }
    Value pow(const Value& a, uint64_t k, size_t) const {
        Value r = KRat::one(K);
        for (uint64_t i = 0; i < k; ++i) r = r * a;
        return r;
    }
};

}  // namespace

FieldSpec parse_field_spec(const std::string& s) {
    size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto expect = [&](const char* lit) {
        skip();
        size_t n = std::strlen(lit);
        if (s.compare(i, n, lit) != 0)
            throw ParseError(std::string("expected '") + lit + "'", i);
        i += n;
    };
    auto number = [&]() -> uint64_t {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("expected a number", i);
        uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + uint64_t(s[i] - '0');
            if (v > 1ull << 40) throw ParseError("field size out of range", i);
            ++i;
        }
        return v;
    };

    expect("GF");
    expect("(");
    uint64_t q = number();
    skip();
    uint64_t d = 1;
    if (i < s.size() && s[i] == '^') {
        ++i;
        d = number();
    }
    expect(")");
    skip();

    FieldSpec spec;
    if (q < 2) throw ParseError("field size must be at least 2", 0);
    uint32_t p = 2;
    while (q % p != 0) {
        ++p;
        if (uint64_t(p) * p > q) {
            p = uint32_t(q);
            break;
        }
    }
    uint64_t rest = q;
    spec.p = p;
    spec.e = 0;
    while (rest > 1) {
        if (rest % p != 0) throw ParseError("field size must be a prime power", 0);
        rest /= p;
        ++spec.e;
    }
    if (d == 0 || d > 64) throw ParseError("extension degree out of range", 0);
    spec.d = uint32_t(d);

    if (i < s.size()) {
        expect("(");
        expect("theta");
        expect(")");
        skip();
        if (i != s.size()) throw ParseError("trailing input", i);
        if (spec.d != 1) throw ParseError("a generic base takes no extension degree", 0);
        spec.finite = false;
    }
    return spec;
}

RationalFunc parse_ratfunc(const FieldTower* tw, const std::string& s, const std::string& var,
                           uint32_t level) {
    NodePtr ast = Parser(s).run();
    return eval_node(ast.get(), RatDomain{tw, var, level});
}

Poly parse_poly(const FieldTower* tw, const std::string& s, const std::string& var,
                uint32_t level) {
    RationalFunc r = parse_ratfunc(tw, s, var, level);
    if (!r.is_polynomial()) throw InputError("expected a polynomial: " + s);
    return r.num;
}

PrimeOfA parse_prime(const FieldTower* tw, const std::string& s, const std::string& var) {
    Poly f = parse_poly(tw, s, var);
    if (f.is_zero()) throw InputError("a prime must be nonzero");
    return make_prime(f.monic());
}

FieldElement parse_element(const FieldTower* tw, uint32_t level, const std::string& s) {
    NodePtr ast = Parser(s).run();
    return eval_node(ast.get(), ElemDomain{tw, level});
}

TwistedPoly parse_twisted(const AField* K, const std::string& s) {
    NodePtr ast = Parser(s).run();
    return eval_node(ast.get(), TwistedDomain{K});
}

KRat parse_krat(const AField* K, const std::string& s) {
    NodePtr ast = Parser(s).run();
    return eval_node(ast.get(), KRatDomain{K});
}

}  // namespace amot
