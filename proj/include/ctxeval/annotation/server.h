// Copyright 2026 The ctxeval Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTXEVAL_ANNOTATION_SERVER_H_
#define CTXEVAL_ANNOTATION_SERVER_H_

#include <filesystem>
#include <memory>
#include <string>
#include <thread>

#include "ctxeval/annotation/service.h"

namespace httplib {
class Server;
}

namespace ctxeval {

inline constexpr const char* kAnnotationTokenHeader = "X-Annotation-Token";

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  // Required in the token header on every /api route except health. Empty
  // disables the check.
  std::string token;
  // Built UI bundle served at "/". Optional.
  std::filesystem::path static_dir;
};

// JSON-over-HTTP front end for an AnnotationService.
class AnnotationServer {
 public:
  AnnotationServer(AnnotationService& service, ServerOptions options);
  ~AnnotationServer();

  // Binds and starts serving on a background thread. Returns the bound port.
  int Start();
  // Binds and serves on the calling thread until Stop().
  void Run();
  void Stop();
  int port() const { return port_; }

 private:
  void Bind();

  AnnotationService& service_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace ctxeval

#endif  // CTXEVAL_ANNOTATION_SERVER_H_
