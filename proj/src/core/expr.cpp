#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "errors.hpp"

namespace np3 {

struct Expr::Node {
    enum class Kind { Number, Variable, Unary, Binary, Call };
    Kind kind;
    double value = 0.0;           // Number
    int var = 0;                  // Variable: 0..2
    char op = 0;                  // Unary ('-') / Binary
    std::string func;             // Call
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) {
        throw Error(ErrorCode::BadConfig, "expression parse error at offset " +
                                              std::to_string(pos_) + ": " +
                                              what + " in '" + s_ + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr make_binary(char op, NodePtr l, NodePtr r) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Binary;
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    NodePtr expression() {
        NodePtr e = term();
        while (true) {
            if (consume('+')) e = make_binary('+', e, term());
            else if (consume('-')) e = make_binary('-', e, term());
            else return e;
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        while (true) {
            if (consume('*')) e = make_binary('*', e, unary());
            else if (consume('/')) e = make_binary('/', e, unary());
            else return e;
        }
    }

    NodePtr unary() {
        if (consume('-')) {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::Unary;
            n->op = '-';
            n->lhs = unary();
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (consume('^')) return make_binary('^', base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (consume('(')) {
            NodePtr e = expression();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("expected number, variable, or function");
    }

    NodePtr number() {
        size_t end = 0;
        double v;
        try {
            v = std::stod(s_.substr(pos_), &end);
        } catch (const std::exception&) {
            fail("bad numeric literal");
        }
        pos_ += end;
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Number;
        n->value = v;
        return n;
    }

    NodePtr identifier() {
        const size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "u1" || name == "u2" || name == "u3") {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::Variable;
            n->var = name[1] - '1';
            return n;
        }
        static const std::vector<std::string> funcs = {"sin",  "cos", "sinh",
                                                       "cosh", "exp", "log"};
        for (const auto& f : funcs) {
            if (name == f) {
                if (!consume('(')) fail("expected '(' after function name");
                NodePtr arg = expression();
                if (!consume(')')) fail("expected ')'");
                auto n = std::make_shared<Expr::Node>();
                n->kind = Expr::Node::Kind::Call;
                n->func = f;
                n->lhs = std::move(arg);
                return n;
            }
        }
        fail("unknown identifier '" + name + "'");
    }
};

double eval_node(const Expr::Node& n, const Vec3& u) {
    using Kind = Expr::Node::Kind;
    switch (n.kind) {
        case Kind::Number: return n.value;
        case Kind::Variable: return u[n.var];
        case Kind::Unary: return -eval_node(*n.lhs, u);
        case Kind::Binary: {
            const double a = eval_node(*n.lhs, u);
            const double b = eval_node(*n.rhs, u);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            return 0.0;
        }
        case Kind::Call: {
            const double a = eval_node(*n.lhs, u);
            if (n.func == "sin") return std::sin(a);
            if (n.func == "cos") return std::cos(a);
            if (n.func == "sinh") return std::sinh(a);
            if (n.func == "cosh") return std::cosh(a);
            if (n.func == "exp") return std::exp(a);
            return std::log(a);
        }
    }
    return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Expr e;
    e.root_ = Parser(text).parse();
    e.text_ = text;
    return e;
}

double Expr::eval(const Vec3& u) const { return eval_node(*root_, u); }

}  // namespace np3
