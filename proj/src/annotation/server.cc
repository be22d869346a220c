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

#include "ctxeval/annotation/server.h"

#include "httplib.h"

namespace ctxeval {
namespace {

constexpr const char* kJsonType = "application/json";

void Send(httplib::Response& res, const ApiResult& result) {
  res.status = result.status;
  if (result.status != 204) res.set_content(DumpLine(result.body), kJsonType);
}

}  // namespace

AnnotationServer::AnnotationServer(AnnotationService& service, ServerOptions options)
    : service_(service), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  s.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
    if (options_.token.empty() || req.path.rfind("/api/", 0) != 0 || req.path == "/api/health") {
      return httplib::Server::HandlerResponse::Unhandled;
    }
    if (req.get_header_value(kAnnotationTokenHeader) != options_.token) {
      Send(res, {401, Json{{"error", "Unauthorized"}, {"message", "missing or wrong token"}}});
      return httplib::Server::HandlerResponse::Handled;
    }
    return httplib::Server::HandlerResponse::Unhandled;
  });
  s.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    Send(res, {200, Json{{"status", "ok"}}});
  });
  s.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
    Send(res, service_.Progress());
  });
  s.Get("/api/tasks/next", [this](const httplib::Request& req, httplib::Response& res) {
    Send(res, service_.NextTask(req.get_param_value("annotator")));
  });
  auto post = [this](auto method) {
    return [this, method](const httplib::Request& req, httplib::Response& res) {
      Json body;
      try {
        body = Json::parse(req.body);
      } catch (const nlohmann::json::exception&) {
        Send(res, {400, Json{{"error", "BadRequest"}, {"message", "body is not JSON"}}});
        return;
      }
      Send(res, (service_.*method)(body));
    };
  };
  s.Post("/api/judgments", post(&AnnotationService::SubmitJudgment));
  s.Post("/api/skip", post(&AnnotationService::Skip));
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                             std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    Send(res, {500, Json{{"error", "Internal"}, {"message", message}}});
  });
  if (!options_.static_dir.empty() && std::filesystem::is_directory(options_.static_dir)) {
    s.set_mount_point("/", options_.static_dir.string());
  }
}

AnnotationServer::~AnnotationServer() { Stop(); }

void AnnotationServer::Bind() {
  if (options_.port == 0) {
    port_ = server_->bind_to_any_port(options_.host);
  } else {
    port_ = server_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
  }
  if (port_ <= 0) {
    throw Error(ErrorCode::kIoError,
                "cannot bind " + options_.host + ":" + std::to_string(options_.port));
  }
}

int AnnotationServer::Start() {
  Bind();
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void AnnotationServer::Run() {
  Bind();
  server_->listen_after_bind();
}

void AnnotationServer::Stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace ctxeval
