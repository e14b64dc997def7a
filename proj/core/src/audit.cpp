#include "peerscope/audit.hpp"

#include "peerscope/corpus.hpp"

namespace peerscope::audit {
namespace {

struct State {
  bool active = false;
  int max_year = 0;
  std::size_t reads = 0;
  std::size_t violations = 0;
};

thread_local State state;

}  // namespace

bool enabled() noexcept {
#ifdef PEERSCOPE_AUDIT_READS
  return true;
#else
  return false;
#endif
}

ReadAuditScope::ReadAuditScope(int max_year) { state = State{true, max_year, 0, 0}; }
ReadAuditScope::~ReadAuditScope() { state.active = false; }
std::size_t ReadAuditScope::reads() const noexcept { return state.reads; }
std::size_t ReadAuditScope::violations() const noexcept { return state.violations; }

void note_read([[maybe_unused]] const PaperRecord& paper) noexcept {
#ifdef PEERSCOPE_AUDIT_READS
  if (!state.active) return;
  ++state.reads;
  if (paper.submission_year > state.max_year) ++state.violations;
#endif
}

}  // namespace peerscope::audit
