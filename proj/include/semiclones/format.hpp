// Canonical text and JSON forms of operations, relations and pairs, plus the
// line-oriented problem file format.
//
//   domain 2
//   op and/2 = 0001
//   rel leq/2 = {00,01,11}
//   rel top/0 = {eps}
//   pair p = (leq, leq)
//
// Tables and tuples are digit strings in canonical tuple order, so carriers
// are limited to at most 10 elements here.

#pragma once

#include "semiclones/core.hpp"

#include <json.hpp>
#include <optional>
#include <string_view>

namespace semiclones {

std::string format_table(const Operation& f);
std::string format_relation(const Relation& r);
std::string format_pair(const RelationPair& p);

nlohmann::json to_json(const Operation& f);
nlohmann::json to_json(const Relation& r);
nlohmann::json to_json(const RelationPair& p);
nlohmann::json to_json(const OpFamily& f);
nlohmann::json to_json(const RelFamily& f);
nlohmann::json to_json(const PairFamily& f);

// Inverses of to_json.
Operation operation_from_json(Carrier carrier, const nlohmann::json& j);
Relation relation_from_json(Carrier carrier, const nlohmann::json& j);
RelationPair pair_from_json(Carrier carrier, const nlohmann::json& j);

Operation parse_table(Carrier carrier, std::size_t arity,
                      std::string_view digits);
Relation parse_relation(Carrier carrier, std::size_t arity,
                        std::string_view text);

struct ParseError : DomainError {
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : DomainError("line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct Problem {
  Carrier carrier{2};
  std::vector<std::pair<std::string, Operation>> ops;
  std::vector<std::pair<std::string, Relation>> rels;
  std::vector<std::pair<std::string, std::string>> pair_names;  // rho, rho'
  std::vector<std::pair<std::string, RelationPair>> pairs;

  const Operation* find_op(std::string_view name) const;
  const Relation* find_rel(std::string_view name) const;
  const RelationPair* find_pair(std::string_view name) const;
};

Problem parse_problem(std::string_view text);
std::string serialise_problem(const Problem& p);

}  // namespace semiclones
