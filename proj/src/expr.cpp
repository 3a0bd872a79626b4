#include "cylsat/expr.hpp"

#include <cctype>
#include <stdexcept>

namespace cylsat {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    const ExprEnv& env;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("expr: " + why + " at offset " + std::to_string(pos) +
                                    " in \"" + s + "\"");
    }

    Rat parse_expr() {
        Rat v = parse_term();
        for (;;) {
            if (eat('+'))
                v += parse_term();
            else if (eat('-'))
                v -= parse_term();
            else
                return v;
        }
    }

    Rat parse_term() {
        Rat v = parse_power();
        for (;;) {
            if (eat('*')) {
                v *= parse_power();
            } else if (eat('/')) {
                Rat d = parse_power();
                if (is_zero(d)) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    Rat parse_power() {
        Rat base = parse_atom();
        if (eat('^')) {
            const long e = parse_integer();
            if (e < 0) fail("negative exponent");
            Rat out(1);
            for (long i = 0; i < e; ++i) out *= base;
            return out;
        }
        return base;
    }

    Rat parse_atom() {
        if (eat('-')) return Rat(-parse_atom());
        if (eat('+')) return parse_atom();
        if (eat('(')) {
            Rat v = parse_expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return Rat(parse_integer());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                name += s[pos++];
            auto it = env.find(name);
            if (it == env.end()) fail("unknown variable '" + name + "'");
            return it->second;
        }
        fail("unexpected character");
    }

    long parse_integer() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer");
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + (s[pos++] - '0');
        return neg ? -v : v;
    }
};

}  // namespace

Rat eval_expr(const std::string& expr, const ExprEnv& env) {
    Parser p{expr, 0, env};
    Rat v = p.parse_expr();
    p.skip_ws();
    if (p.pos != expr.size()) p.fail("trailing input");
    return v;
}

}  // namespace cylsat
