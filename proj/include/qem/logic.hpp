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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qem::logic {

/// Brute-force entailment enumerates 2^n assignments; keep n sane.
inline constexpr int kMaxVariables = 20;

enum class NodeKind { Var, Not, And, Or, Implies, Iff };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable propositional-formula node. Construct through the factory
/// functions; sharing subtrees is fine.
class Formula {
  public:
    static FormulaPtr var(std::string name);
    static FormulaPtr negation(FormulaPtr child);
    static FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs);
    static FormulaPtr disjunction(FormulaPtr lhs, FormulaPtr rhs);
    static FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs);
    static FormulaPtr equivalence(FormulaPtr lhs, FormulaPtr rhs);

    NodeKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const FormulaPtr& lhs() const { return lhs_; }
    const FormulaPtr& rhs() const { return rhs_; }

  private:
    Formula(NodeKind kind, std::string name, FormulaPtr lhs, FormulaPtr rhs)
        : kind_(kind), name_(std::move(name)), lhs_(std::move(lhs)),
          rhs_(std::move(rhs)) {}

    NodeKind kind_;
    std::string name_;
    FormulaPtr lhs_;
    FormulaPtr rhs_;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t position, const std::string& message)
        : std::runtime_error("parse error at position " +
                             std::to_string(position) + ": " + message),
          position(position) {}
    std::size_t position;
};

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& variable)
        : std::runtime_error("unbound variable: " + variable),
          variable(variable) {}
    std::string variable;
};

/// Grammar (precedence low to high, '->' right-associative):
///   formula := iff
///   iff     := implies ("<->" implies)*
///   implies := or ("->" implies)?
///   or      := and ("|" and)*
///   and     := not ("&" not)*
///   not     := "!" not | atom
///   atom    := IDENT | "(" formula ")"
/// Unicode aliases: ! = NOT-SIGN, & = AND, | = OR, -> = RIGHTWARDS
/// double arrow, <-> = LEFT RIGHT double arrow.
FormulaPtr parse(std::string_view text);

/// ';'- or newline-separated sentences; '#' starts a comment line.
std::vector<FormulaPtr> parse_sentences(std::string_view text);

std::string to_string(const FormulaPtr& formula);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

using Assignment = std::map<std::string, bool>;

bool evaluate(const FormulaPtr& formula, const Assignment& assignment);

/// Deduplicated variables in first-appearance order; this ordering fixes
/// the input-qubit order downstream.
std::vector<std::string> free_variables(const FormulaPtr& formula);
std::vector<std::string> free_variables(
    const std::vector<FormulaPtr>& formulas);

struct KnowledgeBase {
    std::vector<FormulaPtr> sentences;

    /// Left-fold of the sentences under conjunction; empty KB is invalid.
    FormulaPtr conjunction() const;
};

struct EntailmentResult {
    bool entailed;
    /// Variable ordering used for the enumeration: KB first-appearance
    /// order, then query variables not already seen.
    std::vector<std::string> variables;
    /// Assignments satisfying alpha AND NOT beta, exhaustive.
    std::vector<Assignment> violations;
};

/// True iff every assignment over the union variables making the KB true
/// also makes the query true.
EntailmentResult entails(const KnowledgeBase& kb, const FormulaPtr& query);

/// Entry i evaluates the formula with variable k bound to bit k of i
/// (same bit convention as the statevector basis index).
std::vector<bool> truth_table(const FormulaPtr& formula,
                              const std::vector<std::string>& variables);

}  // namespace qem::logic
