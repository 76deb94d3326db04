#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reldim/dimension.hpp"

namespace reldim::annotate {

inline constexpr std::size_t kMaxQueue = 10;

struct Judgment {
  bool applies = false;
  std::optional<int> intensity;  // 1..5, only when applies

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

// Indexed by Dimension in taxonomy order.
using Judgments = std::array<Judgment, kDimensionCount>;

struct LabelRecord {
  std::string session;
  std::string participant;
  std::string friend_id;
  Judgments dimensions{};
  std::string submitted;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

struct Session {
  std::string id;
  std::string participant;
  std::vector<std::string> queue;
  std::size_t cursor = 0;
  std::string created;

  std::size_t remaining() const noexcept { return queue.size() - cursor; }
};

struct CreatedSession {
  Session session;
  std::vector<std::string> warnings;
};

struct NextPair {
  bool done = false;
  std::string friend_id;
  std::size_t position = 0;
  std::size_t total = 0;
};

struct Ack {
  std::size_t cursor = 0;
  std::size_t remaining = 0;
};

// Parses {"<dimension>": {"applies": bool, "intensity": 1..5}, ...} naming
// exactly the ten dimensions. Throws ValidationError.
Judgments parse_judgments(std::string_view json_text);
std::string judgments_json(const Judgments& j);

// One export line (no trailing newline). Keys are sorted, so the output is
// byte-stable.
std::string record_json(const LabelRecord& r);
LabelRecord parse_record(std::string_view json_text);

using Clock = std::function<std::string()>;
// ISO 8601 UTC with milliseconds.
std::string utc_now();

// Sessions and labels backed by one append-only JSONL log. Every mutation is
// written and fsynced before memory changes. Opening replays the log; a torn
// final line (no newline) is cut off.
class AnnotationStore {
 public:
  explicit AnnotationStore(std::filesystem::path log_path, Clock clock = utc_now);
  ~AnnotationStore();
  AnnotationStore(const AnnotationStore&) = delete;
  AnnotationStore& operator=(const AnnotationStore&) = delete;

  // Throws ValidationError on an empty participant or friend list.
  CreatedSession create_session(const std::string& participant, const std::vector<std::string>& friends);

  // Throws NotFoundError.
  NextPair next_pair(const std::string& session_id) const;
  Session session(const std::string& session_id) const;

  // Compare-and-advance: ConflictError unless friend_id is queue[cursor]
  // (including an exhausted session). NotFoundError for an unknown session.
  Ack submit_label(const std::string& session_id, const std::string& friend_id, const Judgments& dims);

  // Export lines in submission order.
  std::vector<std::string> export_labels(const std::optional<std::string>& participant = std::nullopt,
                                         const std::optional<std::string>& session = std::nullopt) const;

  std::size_t record_count() const;
  std::size_t session_count() const;
  // Bytes dropped from a torn final line when the log was opened.
  std::size_t truncated_bytes() const noexcept { return truncated_bytes_; }
  const std::filesystem::path& log_path() const noexcept { return path_; }

 private:
  struct Exported {
    std::string session;
    std::string participant;
    std::string line;
  };

  void replay();
  void append(const std::string& line);

  std::filesystem::path path_;
  Clock clock_;
  int fd_ = -1;
  mutable std::mutex mu_;
  std::map<std::string, Session, std::less<>> sessions_;
  std::vector<Exported> records_;
  std::size_t next_session_ = 1;
  std::size_t truncated_bytes_ = 0;
};

}  // namespace reldim::annotate
