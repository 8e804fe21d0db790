// Copyright 2026 The Interview Eval Authors.
//
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

#pragma once

// HTTP adapter for candidates served behind a generic endpoint.
//
// Protocol: one POST per question to `base_url + path` with body
//   {"question_id": ..., "prompt": ..., "options": [{"label","text"}...], "media_refs": [...]}
// and reply {"answer": "..."}. Non-2xx replies, timeouts and malformed bodies
// raise CandidateUnavailable after `retries` extra attempts.

#include <chrono>
#include <cstdlib>
#include <memory>
#include <string>

#include "httplib.h"
#include "interview/error.hpp"
#include "interview/participants.hpp"

namespace interview {

struct RemoteOptions {
  std::string base_url;  // scheme://host:port
  std::string path = "/answer";
  std::chrono::milliseconds timeout{30'000};
  int retries = 0;

  // INTERVIEW_REMOTE_URL, INTERVIEW_REMOTE_TIMEOUT_MS, INTERVIEW_REMOTE_RETRIES.
  static RemoteOptions from_env() {
    RemoteOptions o;
    if (const char* url = std::getenv("INTERVIEW_REMOTE_URL")) o.base_url = url;
    if (const char* t = std::getenv("INTERVIEW_REMOTE_TIMEOUT_MS")) {
      o.timeout = std::chrono::milliseconds(std::strtoll(t, nullptr, 10));
    }
    if (const char* r = std::getenv("INTERVIEW_REMOTE_RETRIES")) o.retries = std::atoi(r);
    return o;
  }
};

inline nlohmann::json remote_request_body(const Question& q) {
  nlohmann::json body;
  body["question_id"] = q.id;
  body["prompt"] = q.prompt;
  body["options"] = nlohmann::json::array();
  for (const auto& o : q.options) body["options"].push_back({{"label", o.label}, {"text", o.text}});
  body["media_refs"] = q.media_refs;
  return body;
}

class RemoteCandidate final : public Candidate {
 public:
  RemoteCandidate(std::string id, RemoteOptions options)
      : id_(std::move(id)), options_(std::move(options)) {
    if (options_.base_url.empty()) throw InputError("remote candidate needs a base URL");
    client_ = std::make_unique<httplib::Client>(options_.base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
    client_->set_connection_timeout(secs.count(), usecs.count());
    client_->set_read_timeout(secs.count(), usecs.count());
    client_->set_write_timeout(secs.count(), usecs.count());
  }

  const std::string& id() const override { return id_; }

  CandidateAnswer answer(const Question& q, Rng&) override {
    const std::string body = remote_request_body(q).dump();
    std::string last_error;
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
      const auto start = std::chrono::steady_clock::now();
      auto res = client_->Post(options_.path, body, "application/json");
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      try {
        auto reply = nlohmann::json::parse(res->body);
        auto it = reply.find("answer");
        if (it == reply.end() || !it->is_string()) {
          last_error = "reply lacks a string 'answer'";
          continue;
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - start);
        return {q.id, it->get<std::string>(), elapsed};
      } catch (const nlohmann::json::exception& e) {
        last_error = std::string("malformed reply: ") + e.what();
      }
    }
    throw CandidateUnavailable(q.id, last_error);
  }

 private:
  std::string id_;
  RemoteOptions options_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace interview
