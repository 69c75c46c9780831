// Copyright 2026 The qemck Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qem/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace qem::logic {

FormulaPtr Formula::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    return FormulaPtr(
        new Formula(NodeKind::Var, std::move(name), nullptr, nullptr));
}
FormulaPtr Formula::negation(FormulaPtr child) {
    return FormulaPtr(
        new Formula(NodeKind::Not, "", std::move(child), nullptr));
}
FormulaPtr Formula::conjunction(FormulaPtr lhs, FormulaPtr rhs) {
    return FormulaPtr(
        new Formula(NodeKind::And, "", std::move(lhs), std::move(rhs)));
}
FormulaPtr Formula::disjunction(FormulaPtr lhs, FormulaPtr rhs) {
    return FormulaPtr(
        new Formula(NodeKind::Or, "", std::move(lhs), std::move(rhs)));
}
FormulaPtr Formula::implication(FormulaPtr lhs, FormulaPtr rhs) {
    return FormulaPtr(
        new Formula(NodeKind::Implies, "", std::move(lhs), std::move(rhs)));
}
FormulaPtr Formula::equivalence(FormulaPtr lhs, FormulaPtr rhs) {
    return FormulaPtr(
        new Formula(NodeKind::Iff, "", std::move(lhs), std::move(rhs)));
}

namespace {

enum class TokenKind { Ident, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t position;
};

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const auto starts_with = [&](std::string_view prefix) {
        return text.substr(i, prefix.size()) == prefix;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t pos = i;
        if (is_ident_start(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && is_ident_char(text[j])) ++j;
            tokens.push_back(
                {TokenKind::Ident, std::string(text.substr(i, j - i)), pos});
            i = j;
        } else if (c == '(') {
            tokens.push_back({TokenKind::LParen, "(", pos});
            ++i;
        } else if (c == ')') {
            tokens.push_back({TokenKind::RParen, ")", pos});
            ++i;
        } else if (c == '!') {
            tokens.push_back({TokenKind::Not, "!", pos});
            ++i;
        } else if (c == '&') {
            tokens.push_back({TokenKind::And, "&", pos});
            ++i;
        } else if (c == '|') {
            tokens.push_back({TokenKind::Or, "|", pos});
            ++i;
        } else if (starts_with("<->")) {
            tokens.push_back({TokenKind::Iff, "<->", pos});
            i += 3;
        } else if (starts_with("->")) {
            tokens.push_back({TokenKind::Implies, "->", pos});
            i += 2;
        } else if (starts_with("¬")) {  // ¬
            tokens.push_back({TokenKind::Not, "¬", pos});
            i += 2;
        } else if (starts_with("∧")) {  // ∧
            tokens.push_back({TokenKind::And, "∧", pos});
            i += 3;
        } else if (starts_with("∨")) {  // ∨
            tokens.push_back({TokenKind::Or, "∨", pos});
            i += 3;
        } else if (starts_with("⇒")) {  // ⇒
            tokens.push_back({TokenKind::Implies, "⇒", pos});
            i += 3;
        } else if (starts_with("⇔")) {  // ⇔
            tokens.push_back({TokenKind::Iff, "⇔", pos});
            i += 3;
        } else {
            throw ParseError(pos, "unknown operator token '" +
                                      std::string(1, c) + "'");
        }
    }
    tokens.push_back({TokenKind::End, "", text.size()});
    return tokens;
}

class Parser {
  public:
    explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

    FormulaPtr parse_all() {
        FormulaPtr formula = parse_iff();
        if (peek().kind != TokenKind::End) {
            throw ParseError(peek().position,
                             "unexpected token '" + peek().text + "'");
        }
        return formula;
    }

  private:
    const Token& peek() const { return tokens_[index_]; }
    Token consume() { return tokens_[index_++]; }
    bool accept(TokenKind kind) {
        if (peek().kind == kind) {
            ++index_;
            return true;
        }
        return false;
    }

    FormulaPtr parse_iff() {
        FormulaPtr lhs = parse_implies();
        while (accept(TokenKind::Iff)) {
            lhs = Formula::equivalence(lhs, parse_implies());
        }
        return lhs;
    }

    FormulaPtr parse_implies() {
        FormulaPtr lhs = parse_or();
        if (accept(TokenKind::Implies)) {
            return Formula::implication(lhs, parse_implies());
        }
        return lhs;
    }

    FormulaPtr parse_or() {
        FormulaPtr lhs = parse_and();
        while (accept(TokenKind::Or)) {
            lhs = Formula::disjunction(lhs, parse_and());
        }
        return lhs;
    }

    FormulaPtr parse_and() {
        FormulaPtr lhs = parse_not();
        while (accept(TokenKind::And)) {
            lhs = Formula::conjunction(lhs, parse_not());
        }
        return lhs;
    }

    FormulaPtr parse_not() {
        if (accept(TokenKind::Not)) return Formula::negation(parse_not());
        return parse_atom();
    }

    FormulaPtr parse_atom() {
        const Token token = consume();
        switch (token.kind) {
            case TokenKind::Ident:
                return Formula::var(token.text);
            case TokenKind::LParen: {
                FormulaPtr inner = parse_iff();
                if (!accept(TokenKind::RParen)) {
                    throw ParseError(peek().position, "expected ')'");
                }
                return inner;
            }
            default:
                throw ParseError(token.position,
                                 "expected identifier or '(', got '" +
                                     token.text + "'");
        }
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

void collect_variables(const FormulaPtr& formula,
                       std::vector<std::string>& order,
                       std::set<std::string>& seen) {
    if (!formula) return;
    if (formula->kind() == NodeKind::Var) {
        if (seen.insert(formula->name()).second) {
            order.push_back(formula->name());
        }
        return;
    }
    collect_variables(formula->lhs(), order, seen);
    collect_variables(formula->rhs(), order, seen);
}

}  // namespace

FormulaPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::vector<FormulaPtr> parse_sentences(std::string_view text) {
    std::vector<FormulaPtr> sentences;
    std::size_t start = 0;
    const auto flush = [&](std::size_t end) {
        std::string_view chunk = text.substr(start, end - start);
        bool blank = true;
        for (char c : chunk) {
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        }
        if (!blank) sentences.push_back(parse(chunk));
        start = end + 1;
    };
    bool in_comment = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (in_comment) {
            if (text[i] == '\n') {
                in_comment = false;
                start = i + 1;
            }
            continue;
        }
        if (text[i] == '#') {
            flush(i);
            in_comment = true;
        } else if (text[i] == ';' || text[i] == '\n') {
            flush(i);
        }
    }
    if (!in_comment && start <= text.size()) flush(text.size());
    return sentences;
}

std::string to_string(const FormulaPtr& formula) {
    switch (formula->kind()) {
        case NodeKind::Var:
            return formula->name();
        case NodeKind::Not:
            return "!" + [&] {
                const FormulaPtr& c = formula->lhs();
                if (c->kind() == NodeKind::Var || c->kind() == NodeKind::Not) {
                    return to_string(c);
                }
                return "(" + to_string(c) + ")";
            }();
        case NodeKind::And:
            return "(" + to_string(formula->lhs()) + " & " +
                   to_string(formula->rhs()) + ")";
        case NodeKind::Or:
            return "(" + to_string(formula->lhs()) + " | " +
                   to_string(formula->rhs()) + ")";
        case NodeKind::Implies:
            return "(" + to_string(formula->lhs()) + " -> " +
                   to_string(formula->rhs()) + ")";
        case NodeKind::Iff:
            return "(" + to_string(formula->lhs()) + " <-> " +
                   to_string(formula->rhs()) + ")";
    }
    return "?";
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind() != b->kind()) return false;
    if (a->kind() == NodeKind::Var) return a->name() == b->name();
    return structurally_equal(a->lhs(), b->lhs()) &&
           structurally_equal(a->rhs(), b->rhs());
}

bool evaluate(const FormulaPtr& formula, const Assignment& assignment) {
    switch (formula->kind()) {
        case NodeKind::Var: {
            const auto it = assignment.find(formula->name());
            if (it == assignment.end()) throw EvalError(formula->name());
            return it->second;
        }
        case NodeKind::Not:
            return !evaluate(formula->lhs(), assignment);
        case NodeKind::And:
            return evaluate(formula->lhs(), assignment) &&
                   evaluate(formula->rhs(), assignment);
        case NodeKind::Or:
            return evaluate(formula->lhs(), assignment) ||
                   evaluate(formula->rhs(), assignment);
        case NodeKind::Implies:
            return !evaluate(formula->lhs(), assignment) ||
                   evaluate(formula->rhs(), assignment);
        case NodeKind::Iff:
            return evaluate(formula->lhs(), assignment) ==
                   evaluate(formula->rhs(), assignment);
    }
    return false;
}

std::vector<std::string> free_variables(const FormulaPtr& formula) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_variables(formula, order, seen);
    return order;
}

std::vector<std::string> free_variables(
    const std::vector<FormulaPtr>& formulas) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const FormulaPtr& f : formulas) collect_variables(f, order, seen);
    return order;
}

FormulaPtr KnowledgeBase::conjunction() const {
    if (sentences.empty()) {
        throw std::invalid_argument("knowledge base is empty");
    }
    FormulaPtr acc = sentences.front();
    for (std::size_t i = 1; i < sentences.size(); ++i) {
        acc = Formula::conjunction(acc, sentences[i]);
    }
    return acc;
}

EntailmentResult entails(const KnowledgeBase& kb, const FormulaPtr& query) {
    std::vector<FormulaPtr> all = kb.sentences;
    all.push_back(query);
    const std::vector<std::string> variables = free_variables(all);
    if (variables.size() > static_cast<std::size_t>(kMaxVariables)) {
        throw std::invalid_argument("variable cap exceeded: " +
                                    std::to_string(variables.size()));
    }
    const FormulaPtr alpha = kb.conjunction();

    EntailmentResult result;
    result.variables = variables;
    const std::uint64_t rows = std::uint64_t{1} << variables.size();
    for (std::uint64_t row = 0; row < rows; ++row) {
        Assignment assignment;
        for (std::size_t k = 0; k < variables.size(); ++k) {
            assignment[variables[k]] = ((row >> k) & 1) != 0;
        }
        if (evaluate(alpha, assignment) && !evaluate(query, assignment)) {
            result.violations.push_back(std::move(assignment));
        }
    }
    result.entailed = result.violations.empty();
    return result;
}

std::vector<bool> truth_table(const FormulaPtr& formula,
                              const std::vector<std::string>& variables) {
    if (variables.size() > static_cast<std::size_t>(kMaxVariables)) {
        throw std::invalid_argument("variable cap exceeded: " +
                                    std::to_string(variables.size()));
    }
    for (const std::string& v : free_variables(formula)) {
        if (std::find(variables.begin(), variables.end(), v) ==
            variables.end()) {
            throw std::invalid_argument("variable list misses '" + v + "'");
        }
    }
    const std::uint64_t rows = std::uint64_t{1} << variables.size();
    std::vector<bool> table(rows);
    for (std::uint64_t row = 0; row < rows; ++row) {
        Assignment assignment;
        for (std::size_t k = 0; k < variables.size(); ++k) {
            assignment[variables[k]] = ((row >> k) & 1) != 0;
        }
        table[row] = evaluate(formula, assignment);
    }
    return table;
}

}  // namespace qem::logic
