// Classical consequence for deontic action logic, decided semantically.
//
// Every deontic action algebra with a valuation restricts to the finite
// subalgebra generated by the basic actions without changing the truth of
// any formula. That subalgebra is described completely by one status per
// atom of the free algebra: Dead (the atom is 0), Permitted, Forbidden or
// Neutral. A StatusModel is such a description; `entails` searches over them.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddal/algebra.hpp"
#include "ddal/syntax.hpp"

namespace ddal {

enum class Status : std::uint8_t { kDead, kPermitted, kForbidden, kNeutral };

const char* to_string(Status s);

class StatusModel {
 public:
  // Throws PreconditionError unless `status` covers all 2^n atoms and at
  // least one atom is alive (the algebra must not be degenerate).
  StatusModel(Vocabulary vocab, std::vector<Status> status);

  const Vocabulary& vocabulary() const { return vocab_; }
  Status status(std::size_t atom) const { return status_.at(atom); }
  const std::vector<Status>& statuses() const { return status_; }

  AtomSet alive() const { return with_status_other_than(Status::kDead); }
  AtomSet permitted() const { return with_status(Status::kPermitted); }
  AtomSet forbidden() const { return with_status(Status::kForbidden); }

  friend bool operator==(const StatusModel&, const StatusModel&) = default;

 private:
  AtomSet with_status(Status s) const;
  AtomSet with_status_other_than(Status s) const;

  Vocabulary vocab_;
  std::vector<Status> status_;
};

// One line per atom: "<atom term> : <status>".
std::string render(const StatusModel& m);

bool satisfies(const StatusModel& m, const Formula& f);

struct EntailmentVerdict {
  bool holds;
  // Satisfies every fact and falsifies the query; present iff !holds.
  std::optional<StatusModel> countermodel;
};

// Some model satisfying every formula, if one exists.
std::optional<StatusModel> find_model(const Vocabulary& vocab,
                                      std::span<const Formula> formulas);

EntailmentVerdict entails(const Vocabulary& vocab,
                          std::span<const Formula> facts, const Formula& query);
EntailmentVerdict entails(const Theory& t, const Formula& query);

bool consistent(const Vocabulary& vocab, std::span<const Formula> facts);
bool consistent(const Theory& t);

// Exhaustive enumeration of all 4^(2^n) status assignments, n <= 3.
// Independent of `entails`; the parallel version splits the enumeration
// across OpenMP threads, the serial one is the reference.
bool oracle_entails(const Theory& t, const Formula& query);
bool oracle_entails_serial(const Theory& t, const Formula& query);

}  // namespace ddal
