#pragma once

// Resumable scans.
//
// A checkpoint is a small line-oriented text file:
//
//   opn-gcd-scan-checkpoint
//   schema_version 1
//   limit <n>
//   segment_size <n>
//   completed_frontier <n>
//   running_count <n>
//   nonsolution_count <n>
//   nonsolution_log_bytes <n>
//   checksum <16 hex digits, FNV-1a 64 of all preceding lines>
//
// Non-solutions of committed segments go to the sidecar "<path>.log", one
// "m g1 g2" line each. Only whole segments are ever recorded, and the
// checkpoint is replaced atomically by write-temp-then-rename, so after a
// crash the log is cut back to nonsolution_log_bytes and work resumes at
// completed_frontier.

#include <fcntl.h>
#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "opn/scan.hpp"

namespace opn {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  static constexpr int kSchemaVersion = 1;

  std::uint64_t limit = 0;
  std::uint64_t segment_size = 0;
  std::uint64_t completed_frontier = 0;
  std::uint64_t running_count = 0;
  std::uint64_t nonsolution_count = 0;
  std::uint64_t nonsolution_log_bytes = 0;
  int schema_version = kSchemaVersion;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline constexpr std::string_view kCheckpointMagic = "opn-gcd-scan-checkpoint";

inline void write_file_atomically(const std::filesystem::path& path, const std::string& data) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw CheckpointError("cannot open " + tmp.string() + " for writing");
  std::size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = ::write(fd, data.data() + written, data.size() - written);
    if (n <= 0) {
      ::close(fd);
      throw CheckpointError("write to " + tmp.string() + " failed");
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) throw CheckpointError("flushing " + tmp.string() + " failed");
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

}  // namespace detail

inline std::string serialize(const Checkpoint& c) {
  std::ostringstream os;
  os << detail::kCheckpointMagic << '\n'
     << "schema_version " << c.schema_version << '\n'
     << "limit " << c.limit << '\n'
     << "segment_size " << c.segment_size << '\n'
     << "completed_frontier " << c.completed_frontier << '\n'
     << "running_count " << c.running_count << '\n'
     << "nonsolution_count " << c.nonsolution_count << '\n'
     << "nonsolution_log_bytes " << c.nonsolution_log_bytes << '\n';
  std::string body = os.str();
  return body + "checksum " + detail::hex16(detail::fnv1a(body)) + "\n";
}

/// Strict parse. Any deviation (magic, version, key order, checksum,
/// frontier invariant) is a CheckpointError.
inline Checkpoint parse_checkpoint(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string body;
  auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) throw CheckpointError("checkpoint truncated");
    return line;
  };
  if (next_line() != detail::kCheckpointMagic) throw CheckpointError("not a checkpoint file");
  body += line + '\n';
  auto field = [&](std::string_view key) -> std::uint64_t {
    next_line();
    body += line + '\n';
    const std::string prefix = std::string(key) + ' ';
    if (line.rfind(prefix, 0) != 0) throw CheckpointError("expected field '" + std::string(key) + "'");
    const std::string digits = line.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 19) {
      throw CheckpointError("malformed value for '" + std::string(key) + "'");
    }
    return std::stoull(digits);
  };
  Checkpoint c;
  const std::uint64_t version = field("schema_version");
  if (version != Checkpoint::kSchemaVersion) {
    throw CheckpointError("unsupported checkpoint schema_version " + std::to_string(version));
  }
  c.limit = field("limit");
  c.segment_size = field("segment_size");
  c.completed_frontier = field("completed_frontier");
  c.running_count = field("running_count");
  c.nonsolution_count = field("nonsolution_count");
  c.nonsolution_log_bytes = field("nonsolution_log_bytes");
  const std::string expected = "checksum " + detail::hex16(detail::fnv1a(body));
  if (next_line() != expected) throw CheckpointError("checkpoint checksum mismatch");
  if (std::getline(in, line)) throw CheckpointError("trailing data after checkpoint checksum");
  if (c.segment_size == 0 || c.completed_frontier > c.limit ||
      (c.completed_frontier % c.segment_size != 0 && c.completed_frontier != c.limit) ||
      c.running_count + c.nonsolution_count != c.completed_frontier) {
    throw CheckpointError("checkpoint violates its frontier invariants");
  }
  return c;
}

inline Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_checkpoint(os.str());
}

inline void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
  detail::write_file_atomically(path, serialize(c));
}

inline std::filesystem::path nonsolution_log_path(const std::filesystem::path& checkpoint) {
  return checkpoint.string() + ".log";
}

struct CheckpointOptions {
  ScanOptions scan;
  bool resume = false;
  /// Stop after committing this many segments (simulated interruption).
  std::optional<std::size_t> max_segments;
};

namespace detail {

inline std::string format_log(const std::vector<SolutionClass>& rows) {
  std::string out;
  for (const auto& c : rows) {
    out += to_string(c.m);
    out += ' ';
    out += to_string(c.g1);
    out += ' ';
    out += to_string(c.g2);
    out += '\n';
  }
  return out;
}

inline void load_log(const std::filesystem::path& log, SummaryBuilder& builder) {
  std::ifstream in(log);
  if (!in) throw CheckpointError("cannot read " + log.string());
  std::string m;
  std::string g1;
  std::string g2;
  while (in >> m >> g1 >> g2) {
    try {
      builder.add_nonsolution({parse_natural(m), parse_natural(g1), parse_natural(g2), false});
    } catch (const DomainError&) {
      throw CheckpointError("malformed line in " + log.string());
    }
  }
  if (!in.eof()) throw CheckpointError("malformed line in " + log.string());
}

}  // namespace detail

/// Scans [1, limit] in segments with the segmented sieve. With a non-empty
/// checkpoint path the run is resumable: a resumed run yields the same
/// summary as an uninterrupted one. A checkpoint that is corrupt or was
/// written for a different limit or segment size is refused.
inline ScanSummary scan_checkpointed(std::uint64_t limit, std::uint64_t segment_size,
                                     const std::filesystem::path& checkpoint_path,
                                     const CheckpointOptions& options = {}) {
  if (segment_size == 0) throw DomainError("segment_size must be at least 1");
  if (limit == 0) throw DomainError("limit must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const bool persistent = !checkpoint_path.empty();
  const std::filesystem::path log_path = persistent ? nonsolution_log_path(checkpoint_path) : "";

  Checkpoint state;
  state.limit = limit;
  state.segment_size = segment_size;

  if (persistent) {
    std::error_code ec;
    if (options.resume && std::filesystem::exists(checkpoint_path, ec)) {
      state = read_checkpoint(checkpoint_path);
      if (state.limit != limit || state.segment_size != segment_size) {
        throw CheckpointError("checkpoint was written for limit " + std::to_string(state.limit) +
                              " / segment_size " + std::to_string(state.segment_size));
      }
      const auto log_size = std::filesystem::file_size(log_path, ec);
      if (ec || log_size < state.nonsolution_log_bytes) {
        throw CheckpointError("non-solution log is missing or shorter than recorded");
      }
      std::filesystem::resize_file(log_path, state.nonsolution_log_bytes, ec);
      if (ec) throw CheckpointError("cannot truncate " + log_path.string());
    } else {
      std::ofstream(log_path, std::ios::trunc);
      if (!std::ofstream(log_path, std::ios::app)) throw CheckpointError("cannot create " + log_path.string());
      write_checkpoint(checkpoint_path, state);
    }
  }

  SummaryBuilder memory(1, limit, options.scan);  // used when not persistent
  const SegmentSieve sieve(limit);
  const std::size_t total_segments = static_cast<std::size_t>((limit - 1) / segment_size + 1);
  std::size_t next_segment = static_cast<std::size_t>(state.completed_frontier / segment_size);
  if (state.completed_frontier == limit) next_segment = total_segments;
  std::size_t budget = options.max_segments.value_or(total_segments);
  const std::size_t batch = std::max(1u, options.scan.threads);

  while (next_segment < total_segments && budget > 0) {
    const std::size_t count = std::min({batch, budget, total_segments - next_segment});
    std::vector<detail::ChunkResult> results(count);
    parallel_for(count, options.scan.threads, [&](std::size_t j) {
      const std::uint64_t lo = 1 + (next_segment + j) * segment_size;
      const std::uint64_t hi = std::min(limit, lo + segment_size - 1);
      results[j] = classify_segment(sieve, lo, hi);
    });
    for (std::size_t j = 0; j < count; ++j) {
      const auto& r = results[j];
      const std::uint64_t hi = std::min<std::uint64_t>(limit, (next_segment + j + 1) * segment_size);
      if (persistent) {
        const std::string lines = detail::format_log(r.nonsolutions);
        std::ofstream log(log_path, std::ios::app | std::ios::binary);
        log << lines;
        log.flush();
        if (!log) throw CheckpointError("append to " + log_path.string() + " failed");
        state.nonsolution_log_bytes += lines.size();
      } else {
        memory.add_solutions(r.solutions);
        for (const auto& c : r.nonsolutions) memory.add_nonsolution(c);
      }
      state.running_count += r.solutions;
      state.nonsolution_count += r.nonsolutions.size();
      state.completed_frontier = hi;
      if (persistent) write_checkpoint(checkpoint_path, state);
    }
    next_segment += count;
    budget -= count;
  }

  ScanSummary summary;
  if (persistent) {
    SummaryBuilder builder(1, limit, options.scan);
    detail::load_log(log_path, builder);
    builder.add_solutions(state.running_count);
    if (builder.summary().nonsolution_count != state.nonsolution_count) {
      throw CheckpointError("non-solution log disagrees with checkpoint tallies");
    }
    summary = std::move(builder.summary());
  } else {
    summary = std::move(memory.summary());
  }
  summary.hi = state.completed_frontier;
  summary.complete = state.completed_frontier == limit;
  summary.elapsed = std::chrono::steady_clock::now() - start;
  return summary;
}

}  // namespace opn
