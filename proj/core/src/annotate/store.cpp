#include "reldim/annotate/store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "reldim/error.hpp"

namespace reldim::annotate {

using nlohmann::json;

namespace {

json judgments_to_json(const Judgments& dims) {
  json out = json::object();
  for (Dimension d : kAllDimensions) {
    const Judgment& jd = dims[static_cast<std::size_t>(d)];
    json v = {{"applies", jd.applies}};
    if (jd.intensity) v["intensity"] = *jd.intensity;
    out[std::string(to_string(d))] = std::move(v);
  }
  return out;
}

Judgments judgments_from_json(const json& obj) {
  if (!obj.is_object()) throw ValidationError("dimensions must be an object");
  Judgments out{};
  std::array<bool, kDimensionCount> seen{};
  for (const auto& [key, value] : obj.items()) {
    // Only canonical names; no aliases in stored records.
    std::optional<Dimension> d;
    for (Dimension c : kAllDimensions) {
      if (key == to_string(c)) d = c;
    }
    if (!d) throw ValidationError("unknown dimension '" + key + "'");
    const auto idx = static_cast<std::size_t>(*d);
    if (!value.is_object()) throw ValidationError("dimension '" + key + "' must be an object");
    for (const auto& [k, v] : value.items()) {
      if (k != "applies" && k != "intensity") {
        throw ValidationError("unexpected field '" + k + "' in dimension '" + key + "'");
      }
    }
    if (!value.contains("applies") || !value["applies"].is_boolean()) {
      throw ValidationError("dimension '" + key + "' needs a boolean 'applies'");
    }
    Judgment jd;
    jd.applies = value["applies"].get<bool>();
    if (value.contains("intensity") && !value["intensity"].is_null()) {
      const json& iv = value["intensity"];
      if (!iv.is_number_integer()) throw ValidationError("intensity for '" + key + "' must be an integer");
      const auto i = iv.get<long long>();
      if (i < 1 || i > 5) throw ValidationError("intensity for '" + key + "' must be in 1..5");
      if (!jd.applies) throw ValidationError("intensity given for '" + key + "' which does not apply");
      jd.intensity = static_cast<int>(i);
    }
    out[idx] = jd;
    seen[idx] = true;
  }
  for (Dimension d : kAllDimensions) {
    if (!seen[static_cast<std::size_t>(d)]) {
      throw ValidationError("missing dimension '" + std::string(to_string(d)) + "'");
    }
  }
  return out;
}

json record_to_json(const LabelRecord& r) {
  return {{"session", r.session},
          {"participant", r.participant},
          {"friend", r.friend_id},
          {"dimensions", judgments_to_json(r.dimensions)},
          {"submitted", r.submitted}};
}

LabelRecord record_from_json(const json& j) {
  LabelRecord r;
  r.session = j.at("session").get<std::string>();
  r.participant = j.at("participant").get<std::string>();
  r.friend_id = j.at("friend").get<std::string>();
  r.dimensions = judgments_from_json(j.at("dimensions"));
  r.submitted = j.at("submitted").get<std::string>();
  return r;
}

std::string format_session_id(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%06zu", n);
  return buf;
}

}  // namespace

Judgments parse_judgments(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("dimensions are not valid JSON: ") + e.what());
  }
  return judgments_from_json(j);
}

std::string judgments_json(const Judgments& j) { return judgments_to_json(j).dump(); }

std::string record_json(const LabelRecord& r) { return record_to_json(r).dump(); }

LabelRecord parse_record(std::string_view text) {
  try {
    return record_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad label record: ") + e.what());
  }
}

std::string utc_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[80];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

AnnotationStore::AnnotationStore(std::filesystem::path log_path, Clock clock)
    : path_(std::move(log_path)), clock_(std::move(clock)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  replay();
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error("cannot open annotation log " + path_.string() + ": " + std::strerror(errno));
}

AnnotationStore::~AnnotationStore() {
  if (fd_ >= 0) ::close(fd_);
}

void AnnotationStore::replay() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();

  const std::size_t complete = content.rfind('\n') == std::string::npos ? 0 : content.rfind('\n') + 1;
  if (complete < content.size()) {
    truncated_bytes_ = content.size() - complete;
    std::filesystem::resize_file(path_, complete);
    content.resize(complete);
  }

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("annotation log: ") + e.what(), line_no);
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "session") {
        Session s;
        s.id = j.at("session").get<std::string>();
        s.participant = j.at("participant").get<std::string>();
        s.queue = j.at("friends").get<std::vector<std::string>>();
        s.created = j.at("created").get<std::string>();
        if (sessions_.count(s.id)) throw ParseError("annotation log: duplicate session " + s.id, line_no);
        sessions_.emplace(s.id, s);
        ++next_session_;
      } else if (type == "label") {
        LabelRecord r = record_from_json(j);
        auto it = sessions_.find(r.session);
        if (it == sessions_.end()) throw ParseError("annotation log: label for unknown session " + r.session, line_no);
        Session& s = it->second;
        if (s.cursor >= s.queue.size() || s.queue[s.cursor] != r.friend_id) {
          throw ParseError("annotation log: label out of queue order in session " + r.session, line_no);
        }
        ++s.cursor;
        records_.push_back({r.session, r.participant, record_json(r)});
      } else {
        throw ParseError("annotation log: unknown record type '" + type + "'", line_no);
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("annotation log: ") + e.what(), line_no);
    } catch (const ValidationError& e) {
      throw ParseError(std::string("annotation log: ") + e.what(), line_no);
    }
  }
}

void AnnotationStore::append(const std::string& line) {
  std::string buf = line;
  buf.push_back('\n');
  const char* p = buf.data();
  std::size_t left = buf.size();
  while (left > 0) {
    const ssize_t n = ::write(fd_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("annotation log write failed: ") + std::strerror(errno));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw Error(std::string("annotation log fsync failed: ") + std::strerror(errno));
}

CreatedSession AnnotationStore::create_session(const std::string& participant,
                                               const std::vector<std::string>& friends) {
  if (participant.empty()) throw ValidationError("participant id is required");
  CreatedSession out;
  std::set<std::string> seen;
  std::vector<std::string> queue;
  std::size_t duplicates = 0;
  for (const auto& f : friends) {
    if (f.empty()) throw ValidationError("friend ids must be non-empty");
    if (seen.insert(f).second) {
      queue.push_back(f);
    } else {
      ++duplicates;
    }
  }
  if (queue.empty()) throw ValidationError("friend list is empty");
  if (duplicates > 0) out.warnings.push_back("removed " + std::to_string(duplicates) + " duplicate friend ids");
  if (queue.size() > kMaxQueue) {
    out.warnings.push_back("friend list truncated from " + std::to_string(queue.size()) + " to " +
                           std::to_string(kMaxQueue));
    queue.resize(kMaxQueue);
  }

  std::lock_guard lock(mu_);
  Session s;
  s.id = format_session_id(next_session_);
  s.participant = participant;
  s.queue = std::move(queue);
  s.created = clock_();
  const json line = {{"type", "session"},
                     {"session", s.id},
                     {"participant", s.participant},
                     {"friends", s.queue},
                     {"created", s.created}};
  append(line.dump());
  ++next_session_;
  sessions_.emplace(s.id, s);
  out.session = std::move(s);
  return out;
}

NextPair AnnotationStore::next_pair(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + session_id + "'");
  const Session& s = it->second;
  NextPair p;
  p.position = s.cursor;
  p.total = s.queue.size();
  p.done = s.cursor == s.queue.size();
  if (!p.done) p.friend_id = s.queue[s.cursor];
  return p;
}

Session AnnotationStore::session(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + session_id + "'");
  return it->second;
}

Ack AnnotationStore::submit_label(const std::string& session_id, const std::string& friend_id,
                                  const Judgments& dims) {
  for (Dimension d : kAllDimensions) {
    const Judgment& j = dims[static_cast<std::size_t>(d)];
    if (j.intensity && (!j.applies || *j.intensity < 1 || *j.intensity > 5)) {
      throw ValidationError("bad intensity for '" + std::string(to_string(d)) + "'");
    }
  }
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + session_id + "'");
  Session& s = it->second;
  if (s.cursor >= s.queue.size()) throw ConflictError("session '" + session_id + "' is complete");
  if (s.queue[s.cursor] != friend_id) {
    throw ConflictError("expected friend '" + s.queue[s.cursor] + "', got '" + friend_id + "'");
  }
  LabelRecord r;
  r.session = s.id;
  r.participant = s.participant;
  r.friend_id = friend_id;
  r.dimensions = dims;
  r.submitted = clock_();
  json line = record_to_json(r);
  line["type"] = "label";
  append(line.dump());
  ++s.cursor;
  records_.push_back({r.session, r.participant, record_json(r)});
  return {s.cursor, s.remaining()};
}

std::vector<std::string> AnnotationStore::export_labels(const std::optional<std::string>& participant,
                                                        const std::optional<std::string>& session) const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& r : records_) {
    if (participant && r.participant != *participant) continue;
    if (session && r.session != *session) continue;
    out.push_back(r.line);
  }
  return out;
}

std::size_t AnnotationStore::record_count() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

std::size_t AnnotationStore::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

}  // namespace reldim::annotate
