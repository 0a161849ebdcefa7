#pragma once

#include <memory>

#include "geo/groups.hpp"

namespace geo {

/// Backend interface behind Group. Identity letters never reach it.
class GroupImpl {
 public:
  explicit GroupImpl(const Alphabet& a) : alphabet(a) {}
  virtual ~GroupImpl() = default;
  virtual Element identity() const = 0;
  virtual Element times_letter(const Element& g, Letter x) const = 0;
  virtual Element mult(const Element& g, const Element& h) const;  // default: word of h
  virtual Element inv(const Element& g) const;                     // default: word of g
  virtual Word word_of(const Element& g) const = 0;
  virtual std::string to_string(const Element& g) const = 0;
  virtual std::optional<std::size_t> length(const Element&) const { return std::nullopt; }

 protected:
  const Alphabet& alphabet;
};

/// Word length in a factor group: closed formula if any, else a lazily
/// grown ball.
class FactorLength {
 public:
  explicit FactorLength(std::shared_ptr<const Group> g) : group_(std::move(g)) {}
  std::size_t length(const Element& g);

 private:
  std::shared_ptr<const Group> group_;
  std::shared_ptr<GeodesicOracle> oracle_;
};

}  // namespace geo
