#pragma once

#include <string>
#include <utility>
#include <vector>

#include "obddc/cnf.hpp"
#include "obddc/common.hpp"
#include "obddc/obdd.hpp"

namespace obddc {

// What one compilation did. level_widths[i] is the number of distinct
// subterm labels encountered while branching the (i+1)-th ordering variable,
// counting labels identified with sinks; their maximum is the subterm width
// observable during construction.
struct CompileReport {
  Ordering ordering;
  std::string strategy = "explicit";
  std::vector<long long> level_widths;
  std::vector<long long> level_nodes;  // nodes created while branching each variable
  long long measured_stw = 1;
  long long size_before_reduce = 0;
  long long size_after_reduce = 0;
  double elapsed_ms = 0.0;

  // deletion-strategy extras; k < 0 when not applicable
  int deletion_k = -1;
  long long stw_sigma_pi = -1;   // exact width of F under the combined order
  long long stw_deleted = -1;    // exact width of the deleted formula under pi
  // width of the deleted formula counted by surviving clause identities; the
  // stripped husks of clauses a restriction would drop can collapse distinct
  // subterms, so this is the side the 2^k bound provably holds against
  long long stw_deleted_survivor = -1;
  bool deletion_bound_checked = false;
  bool deletion_bound_ok = true;  // the literal subterm-width inequality
};

struct Strategy {
  enum class Kind { Explicit, Convex, Pathwidth, Deletion, Auto };

  Kind kind = Kind::Auto;
  Ordering explicit_order;  // Kind::Explicit only
  int max_k = 10;           // Kind::Deletion / Auto deletion budget

  static Strategy explicit_order_of(Ordering o) {
    Strategy s;
    s.kind = Kind::Explicit;
    s.explicit_order = std::move(o);
    return s;
  }
  static Strategy convex() { return {Kind::Convex, {}, 10}; }
  static Strategy pathwidth() { return {Kind::Pathwidth, {}, 10}; }
  static Strategy deletion(int max_k) { return {Kind::Deletion, {}, max_k}; }
  static Strategy auto_select() { return {Kind::Auto, {}, 10}; }
};

// Level-by-level construction: the source is labelled F, each level-i node
// labelled G branches on the next ordering variable into nodes labelled
// G[x=b], merging equal labels within the level and identifying labels that
// contain the empty clause with the 0-sink and empty labels with the 1-sink.
// The result is reduced afterwards; the report carries both sizes.
std::pair<Obdd, CompileReport> compile_with_ordering(const Cnf& f,
                                                     const Ordering& sigma);

// Ordering selection. Convex fails on non-convex inputs; Deletion fails when
// no feedback vertex set within max_k exists; Auto compares the measured
// widths of the applicable candidates. F must not contain the empty clause.
std::pair<Ordering, std::string> choose_ordering(const Cnf& f,
                                                 const Strategy& strategy,
                                                 const Guards& guards = {});

// Deletion-set pipeline: compiles F under sigma-pi where sigma lists the
// deleted (and orphaned) variables by id and pi is a forget ordering of the
// deleted formula E; the report instantiates the 2^k * stw(E, pi) bound,
// checked with exact widths when within guards.
std::pair<Obdd, CompileReport> deletion_compile(const Cnf& f, int max_k,
                                                const Guards& guards = {});

// choose_ordering followed by compile_with_ordering (deletion_compile for
// the Deletion strategy), with the strategy tag filled in.
std::pair<Obdd, CompileReport> compile(const Cnf& f, const Strategy& strategy,
                                       const Guards& guards = {});

}  // namespace obddc
