#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "freerot/scenarios.hpp"

namespace freerot::detail {

struct SessionRecord {
  std::string hash;
  nlohmann::json transcript;  // null unless kept or written
  nlohmann::json violations = nlohmann::json::array();
  std::size_t facts = 0;
};

/// Hashes the transcript and runs the signed-permutation soundness check.
/// `stream` selects an independent random stream under opt.seed.
SessionRecord record_session(const Session& s, const ScenarioOptions& opt, std::uint64_t stream,
                             bool include_preset);

/// Folds a record into the report: soundness totals, kept transcripts, and
/// the transcript file when a directory is configured.
void merge_record(Report& rep, SessionRecord&& rec, const ScenarioOptions& opt);

/// Witness record for a kernel step that failed: the reason, and the
/// residual when a certificate did not close.
nlohmann::json failure_witness(const std::exception& e);
/// Inconclusive for resource exhaustion, refuted otherwise.
Verdict failure_verdict(const std::exception& e);

/// "(1,1,2)".
std::string tuple_text(std::span<const int> v);
std::string entry_key(int i, int j);

inline FreePolynomial one(int d) { return FreePolynomial::unit(d); }
inline FreePolynomial scaled(const Scalar& c, FreePolynomial p) { return p *= c; }

/// Calls fn(k) for k in [0, count) on up to `threads` workers. The first
/// exception (lowest index) is rethrown after all workers stop.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace freerot::detail
