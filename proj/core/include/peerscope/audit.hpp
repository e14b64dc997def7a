#pragma once

#include <cstddef>

namespace peerscope {

struct PaperRecord;

namespace audit {

/// True when the library was compiled with read auditing enabled.
bool enabled() noexcept;

/// While alive, every record the Corpus hands out on this thread is checked
/// against `max_year`. Reads of later records are counted as violations.
/// Scopes do not nest.
class ReadAuditScope {
 public:
  explicit ReadAuditScope(int max_year);
  ~ReadAuditScope();
  ReadAuditScope(const ReadAuditScope&) = delete;
  ReadAuditScope& operator=(const ReadAuditScope&) = delete;

  std::size_t reads() const noexcept;
  std::size_t violations() const noexcept;
};

void note_read(const PaperRecord& paper) noexcept;

}  // namespace audit
}  // namespace peerscope
