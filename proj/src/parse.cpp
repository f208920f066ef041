// Recursive-descent parser for polynomial expressions.
//
//   expr    := signed (('+' | '-') signed)*
//   signed  := '-' signed | product
//   product := power (('*' | '/') power)*
//   power   := atom ('^' INT)?
//   atom    := INT | IDENT | '(' expr ')'
//
// Division is accepted only by nonzero constants so that printed
// coefficients such as 5/6 or (t + 1)/(t) read back.

#include <cctype>

#include "regval/errors.hpp"
#include "regval/poly.hpp"

namespace regval {

namespace {

class Parser {
public:
    Parser(const std::string& text, const Ring& ring) : s_(text), r_(ring) {}

    Poly run() {
        skip();
        if (pos_ >= s_.size()) throw SyntaxError(pos_, "empty expression");
        Poly p = expr();
        skip();
        if (pos_ < s_.size()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly acc = signed_term();
        while (true) {
            if (accept('+')) acc = acc + signed_term();
            else if (accept('-')) acc = acc - signed_term();
            else return acc;
        }
    }

    Poly signed_term() {
        if (accept('-')) return -signed_term();
        return product();
    }

    Poly product() {
        Poly acc = power();
        while (true) {
            if (accept('*')) {
                acc = acc * power();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Poly d = power();
                if (!d.is_constant()) throw SyntaxError(at, "division by a non-constant");
                if (d.is_zero()) throw DivisionByZero("division by zero at " + std::to_string(at));
                acc = acc.scale(d.lc().inverse());
            } else {
                return acc;
            }
        }
    }

    Poly power() {
        Poly base = atom();
        if (accept('^')) {
            skip();
            std::size_t at = pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw SyntaxError(at, "exponent must be a nonnegative integer");
            long e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + (s_[pos_++] - '0');
                if (e > 1000000) throw SyntaxError(at, "exponent too large");
            }
            return base.pow(e);
        }
        return base;
    }

    Poly atom() {
        skip();
        if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpq_class q(mpz_class(s_.substr(start, pos_ - start)));
            return Poly::constant(r_, FieldElement::from_rational(r_.field(), q));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                         s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            int i = r_.index_of(name);
            if (i >= 0) return Poly::variable(r_, static_cast<std::size_t>(i));
            const auto names = r_.field().all_names();
            for (const auto& n : names)
                if (n == name) return Poly::constant(r_, FieldElement::transcendental(r_.field(), name));
            throw UnknownVariable(name + " (at " + std::to_string(start) + ")");
        }
        throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    const Ring& r_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text, const Ring& ring) { return Parser(text, ring).run(); }

}  // namespace regval
