#include <cctype>
#include <sstream>

#include "realqe/formula.hpp"

namespace realqe {

namespace {

struct Token {
    enum class Type { LParen, RParen, Symbol, Number, End } type;
    std::string text;
    int line, column;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space();
        int l = line_, c = column_;
        if (pos_ >= text_.size()) return {Token::Type::End, "", l, c};
        char ch = text_[pos_];
        if (ch == '(') {
            advance();
            return {Token::Type::LParen, "(", l, c};
        }
        if (ch == ')') {
            advance();
            return {Token::Type::RParen, ")", l, c};
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            ((ch == '-' || ch == '+') && pos_ + 1 < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
              text_[pos_ + 1] == '.'))) {
            std::string num;
            num += ch;
            advance();
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                num += text_[pos_];
                advance();
            }
            return {Token::Type::Number, num, l, c};
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || ch == '$') {
            std::string id;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                    text_[pos_] == '$')) {
                id += text_[pos_];
                advance();
            }
            return {Token::Type::Symbol, id, l, c};
        }
        // operator symbols
        static const char* ops[] = {"<->", "->", "<=", ">=", "!=", "=", "<", ">",
                                    "+",   "-",  "*",  "/",  "^"};
        for (const char* op : ops) {
            size_t n = std::string(op).size();
            if (text_.compare(pos_, n, op) == 0) {
                for (size_t i = 0; i < n; ++i) advance();
                return {Token::Type::Symbol, op, l, c};
            }
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
    }

  private:
    void skip_space() {
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
            } else {
                break;
            }
        }
    }
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, column_ = 1;
};

// Generic s-expression node.
struct SExpr {
    bool is_list = false;
    std::string token;  // symbol or number text when !is_list
    bool is_number = false;
    std::vector<SExpr> items;
    int line = 1, column = 1;
};

class Reader {
  public:
    explicit Reader(const std::string& text) : lexer_(text) { tok_ = lexer_.next(); }

    SExpr read() {
        SExpr e = read_one();
        if (tok_.type != Token::Type::End)
            throw ParseError("trailing input after formula", tok_.line, tok_.column);
        return e;
    }

  private:
    SExpr read_one() {
        if (tok_.type == Token::Type::End)
            throw ParseError("unexpected end of input", tok_.line, tok_.column);
        if (tok_.type == Token::Type::RParen)
            throw ParseError("unexpected ')'", tok_.line, tok_.column);
        if (tok_.type == Token::Type::LParen) {
            SExpr list;
            list.is_list = true;
            list.line = tok_.line;
            list.column = tok_.column;
            tok_ = lexer_.next();
            while (tok_.type != Token::Type::RParen) {
                if (tok_.type == Token::Type::End)
                    throw ParseError("missing ')'", tok_.line, tok_.column);
                list.items.push_back(read_one());
            }
            tok_ = lexer_.next();
            return list;
        }
        SExpr leaf;
        leaf.token = tok_.text;
        leaf.is_number = tok_.type == Token::Type::Number;
        leaf.line = tok_.line;
        leaf.column = tok_.column;
        tok_ = lexer_.next();
        return leaf;
    }

    Lexer lexer_;
    Token tok_;
};

// A term value p/den with den > 0; atoms clear the denominator.
struct TermValue {
    MultiPoly num;
    Int den = 1;
};

TermValue term_add(const TermValue& a, const TermValue& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
TermValue term_mul(const TermValue& a, const TermValue& b) {
    return {a.num * b.num, a.den * b.den};
}
TermValue term_neg(const TermValue& a) { return {-a.num, a.den}; }

class FormulaBuilder {
  public:
    QFFormula build_qf(const SExpr& e, bool negated) {
        if (!e.is_list) {
            if (e.token == "true") return QFFormula::truth(!negated);
            if (e.token == "false") return QFFormula::truth(negated);
            throw ParseError("expected a formula, got '" + e.token + "'", e.line, e.column);
        }
        if (e.items.empty()) throw ParseError("empty list", e.line, e.column);
        const SExpr& head = e.items[0];
        if (head.is_list) throw ParseError("operator expected", head.line, head.column);
        const std::string& op = head.token;
        if (op == "exists")
            throw UnsupportedQuantifierError(
                "quantifiers are only supported as a prenex existential block");
        if (op == "forall")
            throw UnsupportedQuantifierError("universal quantifiers are not supported");
        if (op == "and" || op == "or") {
            if (e.items.size() < 2)
                throw ParseError("'" + op + "' needs at least one argument", e.line, e.column);
            std::vector<QFFormula> children;
            for (size_t i = 1; i < e.items.size(); ++i)
                children.push_back(build_qf(e.items[i], negated));
            bool conjunctive = (op == "and") != negated;
            return conjunctive ? QFFormula::conj(std::move(children))
                               : QFFormula::disj(std::move(children));
        }
        if (op == "not") {
            expect_arity(e, 2);
            return build_qf(e.items[1], !negated);
        }
        if (op == "->") {
            expect_arity(e, 3);
            std::vector<QFFormula> children{build_qf(e.items[1], !negated),
                                            build_qf(e.items[2], negated)};
            return negated ? QFFormula::conj({build_qf(e.items[1], false),
                                              build_qf(e.items[2], true)})
                           : QFFormula::disj(std::move(children));
        }
        if (op == "<->") {
            expect_arity(e, 3);
            // (a -> b) and (b -> a), negation-normalized on demand
            QFFormula fwd = negated
                                ? QFFormula::conj({build_qf(e.items[1], false),
                                                   build_qf(e.items[2], true)})
                                : QFFormula::disj({build_qf(e.items[1], true),
                                                   build_qf(e.items[2], false)});
            QFFormula bwd = negated
                                ? QFFormula::conj({build_qf(e.items[2], false),
                                                   build_qf(e.items[1], true)})
                                : QFFormula::disj({build_qf(e.items[2], true),
                                                   build_qf(e.items[1], false)});
            return negated ? QFFormula::disj({fwd, bwd}) : QFFormula::conj({fwd, bwd});
        }
        Rel rel;
        if (op == "=")
            rel = Rel::Eq;
        else if (op == "<=")
            rel = Rel::Le;
        else if (op == "<")
            rel = Rel::Lt;
        else if (op == ">=")
            rel = Rel::Ge;
        else if (op == ">")
            rel = Rel::Gt;
        else if (op == "!=")
            rel = Rel::Ne;
        else
            throw ParseError("unknown operator '" + op + "'", head.line, head.column);
        if (rel == Rel::Ne && e.items.size() != 3)
            throw ParseError("'!=' takes exactly two arguments", e.line, e.column);
        if (e.items.size() < 3)
            throw ParseError("'" + op + "' needs at least two arguments", e.line, e.column);
        // chained relations expand to a conjunction of adjacent pairs
        std::vector<QFFormula> atoms;
        for (size_t i = 1; i + 1 < e.items.size(); ++i) {
            TermValue lhs = build_term(e.items[i]);
            TermValue rhs = build_term(e.items[i + 1]);
            MultiPoly p = lhs.num * rhs.den - rhs.num * lhs.den;
            Rel r = negated ? complement_relation(rel) : rel;
            atoms.push_back(QFFormula::atom(std::move(p), r));
        }
        // not (a and b) = (not a or not b)
        return negated ? QFFormula::disj(std::move(atoms)) : QFFormula::conj(std::move(atoms));
    }

    TermValue build_term(const SExpr& e) {
        if (!e.is_list) {
            if (e.is_number) return number(e);
            if (e.token == "true" || e.token == "false")
                throw ParseError("formula in term position", e.line, e.column);
            if (e.token[0] == '$')
                throw ParseError("variable names starting with '$' are reserved", e.line,
                                 e.column);
            return {MultiPoly::variable(e.token), 1};
        }
        if (e.items.empty()) throw ParseError("empty list", e.line, e.column);
        const SExpr& head = e.items[0];
        const std::string& op = head.is_list ? "" : head.token;
        if (op == "+") {
            if (e.items.size() < 2)
                throw ParseError("'+' needs at least one argument", e.line, e.column);
            TermValue acc = build_term(e.items[1]);
            for (size_t i = 2; i < e.items.size(); ++i)
                acc = term_add(acc, build_term(e.items[i]));
            return acc;
        }
        if (op == "-") {
            if (e.items.size() == 2) return term_neg(build_term(e.items[1]));
            if (e.items.size() < 3)
                throw ParseError("'-' needs at least one argument", e.line, e.column);
            TermValue acc = build_term(e.items[1]);
            for (size_t i = 2; i < e.items.size(); ++i)
                acc = term_add(acc, term_neg(build_term(e.items[i])));
            return acc;
        }
        if (op == "*") {
            if (e.items.size() < 2)
                throw ParseError("'*' needs at least one argument", e.line, e.column);
            TermValue acc = build_term(e.items[1]);
            for (size_t i = 2; i < e.items.size(); ++i)
                acc = term_mul(acc, build_term(e.items[i]));
            return acc;
        }
        if (op == "/") {
            expect_arity(e, 3);
            TermValue num = build_term(e.items[1]);
            TermValue den = build_term(e.items[2]);
            if (!den.num.is_constant())
                throw ParseError("'/' denominator must be a rational constant", e.line, e.column);
            Int d = den.num.constant_value();
            if (d == 0) throw ParseError("division by zero", e.line, e.column);
            // num.num/num.den / (d/den.den) = num.num*den.den / (num.den*d)
            MultiPoly top = num.num * den.den;
            Int bottom = num.den * d;
            if (bottom < 0) return {-top, -bottom};
            return {std::move(top), std::move(bottom)};
        }
        if (op == "^") {
            expect_arity(e, 3);
            const SExpr& exp = e.items[2];
            if (exp.is_list || !exp.is_number || exp.token.find('.') != std::string::npos ||
                exp.token[0] == '-')
                throw ParseError("'^' exponent must be a nonnegative integer", e.line, e.column);
            unsigned long n = std::stoul(exp.token);
            TermValue base = build_term(e.items[1]);
            TermValue acc{MultiPoly::constant(1), 1};
            for (unsigned long i = 0; i < n; ++i) acc = term_mul(acc, base);
            return acc;
        }
        throw ParseError("unknown term operator", e.line, e.column);
    }

  private:
    static void expect_arity(const SExpr& e, size_t n) {
        if (e.items.size() != n)
            throw ParseError("wrong number of arguments", e.line, e.column);
    }

    TermValue number(const SExpr& e) {
        auto q = parse_rational(e.token);
        if (!q) throw ParseError("bad number '" + e.token + "'", e.line, e.column);
        return {MultiPoly::constant(q->get_num()), q->get_den()};
    }
};

}  // namespace

ExistsBlock parse_formula(const std::string& text) {
    Reader reader(text);
    SExpr root = reader.read();
    // Collect a chain of top-level exists blocks.
    std::vector<std::string> written_order;
    const SExpr* body = &root;
    while (body->is_list && !body->items.empty() && !body->items[0].is_list &&
           body->items[0].token == "exists") {
        const SExpr& e = *body;
        if (e.items.size() != 3)
            throw ParseError("'exists' takes a variable list and a body", e.line, e.column);
        const SExpr& vars = e.items[1];
        if (!vars.is_list || vars.items.empty())
            throw ParseError("'exists' needs a non-empty variable list", vars.line, vars.column);
        for (const auto& v : vars.items) {
            if (v.is_list || v.is_number)
                throw ParseError("bad quantified variable", v.line, v.column);
            if (v.token[0] == '$')
                throw ParseError("variable names starting with '$' are reserved", v.line,
                                 v.column);
            for (const auto& seen : written_order)
                if (seen == v.token)
                    throw ParseError("variable quantified twice: " + v.token, v.line, v.column);
            written_order.push_back(v.token);
        }
        body = &e.items[2];
    }
    FormulaBuilder builder;
    QFFormula matrix = builder.build_qf(*body, false);
    // stored innermost-first
    std::vector<std::string> quantified(written_order.rbegin(), written_order.rend());
    return ExistsBlock{std::move(quantified), std::move(matrix)};
}

namespace {

void print_poly(std::ostream& out, const MultiPoly& p);

void print_term(std::ostream& out, const Monomial& m, const Int& c) {
    size_t factors = m.size() + (c != 1 || m.empty() ? 1 : 0);
    if (factors > 1) out << "(* ";
    bool first = true;
    if (c != 1 || m.empty()) {
        out << c.get_str();
        first = false;
    }
    for (const auto& [v, e] : m) {
        if (!first) out << " ";
        first = false;
        if (e > 1)
            out << "(^ " << v << " " << e << ")";
        else
            out << v;
    }
    if (factors > 1) out << ")";
}

void print_poly(std::ostream& out, const MultiPoly& p) {
    if (p.is_zero()) {
        out << "0";
        return;
    }
    const auto& terms = p.terms();
    if (terms.size() > 1) out << "(+ ";
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (!first) out << " ";
        first = false;
        print_term(out, it->first, it->second);
    }
    if (terms.size() > 1) out << ")";
}

void print_qf(std::ostream& out, const QFFormula& f) {
    switch (f.kind()) {
        case QFFormula::Kind::True: out << "true"; return;
        case QFFormula::Kind::False: out << "false"; return;
        case QFFormula::Kind::Atomic:
            out << "(" << relation_symbol(f.atom_ref().rel) << " ";
            print_poly(out, f.atom_ref().lhs);
            out << " 0)";
            return;
        case QFFormula::Kind::And:
        case QFFormula::Kind::Or: {
            out << (f.kind() == QFFormula::Kind::And ? "(and" : "(or");
            for (const auto& c : f.children()) {
                out << " ";
                print_qf(out, c);
            }
            out << ")";
            return;
        }
    }
}

}  // namespace

std::string print_formula(const QFFormula& f) {
    std::ostringstream out;
    print_qf(out, f);
    return out.str();
}

std::string print_formula(const ExistsBlock& f) {
    if (f.quantified.empty()) return print_formula(f.matrix);
    std::ostringstream out;
    out << "(exists (";
    for (auto it = f.quantified.rbegin(); it != f.quantified.rend(); ++it) {
        if (it != f.quantified.rbegin()) out << " ";
        out << *it;
    }
    out << ") ";
    print_qf(out, f.matrix);
    out << ")";
    return out.str();
}

}  // namespace realqe
