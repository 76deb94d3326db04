#pragma once

#include <memory>
#include <string>

#include "reldim/annotate/store.hpp"

namespace reldim::annotate {

// Short prompt shown for a dimension in the labeling flow.
std::string_view prompt(Dimension d);

// HTTP front end over an AnnotationStore.
//   POST /sessions                {"participant", "friends": [...]}      -> 201
//   GET  /sessions/{id}/next                                             -> 200
//   POST /sessions/{id}/labels    {"friend", "dimensions": {...}}        -> 200
//   GET  /labels/export?participant=&session=                            -> 200 (JSONL)
// Errors: 400 validation, 404 unknown session, 409 cursor conflict.
class Server {
 public:
  explicit Server(AnnotationStore& store);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace reldim::annotate
