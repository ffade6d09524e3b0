#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcw/value.hpp"

namespace lcw {

struct FunctionSym {
  std::string name;
  int arity = 1;
  Value lipschitz;  // lambda_F >= 0
};

struct RelationSym {
  std::string name;
  int arity = 1;
  Value lipschitz;  // lambda_R >= 0
};

/// Symbol table of a Lipschitz language. The metric symbol d is built in
/// and binary; it cannot be redeclared.
class Signature {
 public:
  void add_constant(const std::string& name) {
    check_fresh(name);
    constants_.push_back(name);
  }
  void add_function(const std::string& name, int arity, Value lip) {
    check_fresh(name);
    if (arity < 1) throw std::invalid_argument("function arity must be >= 1");
    if (cmp(lip, Value(0)) < 0)
      throw std::invalid_argument("Lipschitz constant must be >= 0");
    functions_.push_back({name, arity, lip});
  }
  void add_relation(const std::string& name, int arity, Value lip) {
    check_fresh(name);
    if (arity < 1) throw std::invalid_argument("relation arity must be >= 1");
    if (cmp(lip, Value(0)) < 0)
      throw std::invalid_argument("Lipschitz constant must be >= 0");
    relations_.push_back({name, arity, lip});
  }

  const std::vector<std::string>& constants() const { return constants_; }
  const std::vector<FunctionSym>& functions() const { return functions_; }
  const std::vector<RelationSym>& relations() const { return relations_; }

  bool is_constant(const std::string& name) const {
    for (auto& c : constants_)
      if (c == name) return true;
    return false;
  }
  const FunctionSym* function(const std::string& name) const {
    for (auto& f : functions_)
      if (f.name == name) return &f;
    return nullptr;
  }
  const RelationSym* relation(const std::string& name) const {
    for (auto& r : relations_)
      if (r.name == name) return &r;
    return nullptr;
  }
  bool declared(const std::string& name) const {
    return is_constant(name) || function(name) || relation(name);
  }

  bool operator==(const Signature& o) const {
    if (constants_ != o.constants_) return false;
    if (functions_.size() != o.functions_.size()) return false;
    if (relations_.size() != o.relations_.size()) return false;
    for (size_t i = 0; i < functions_.size(); ++i) {
      auto &a = functions_[i], &b = o.functions_[i];
      if (a.name != b.name || a.arity != b.arity || a.lipschitz != b.lipschitz)
        return false;
    }
    for (size_t i = 0; i < relations_.size(); ++i) {
      auto &a = relations_[i], &b = o.relations_[i];
      if (a.name != b.name || a.arity != b.arity || a.lipschitz != b.lipschitz)
        return false;
    }
    return true;
  }

 private:
  void check_fresh(const std::string& name) {
    if (name == "d")
      throw std::invalid_argument("the metric symbol d is built in");
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    if (declared(name))
      throw std::invalid_argument("duplicate symbol: " + name);
  }

  std::vector<std::string> constants_;
  std::vector<FunctionSym> functions_;
  std::vector<RelationSym> relations_;
};

}  // namespace lcw
