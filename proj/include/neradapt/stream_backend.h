// Copyright 2026 The neradapt Authors
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

#ifndef NERADAPT_STREAM_BACKEND_H_
#define NERADAPT_STREAM_BACKEND_H_

#include <sys/types.h>

#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>

#include "neradapt/mlm_bridge.h"

namespace neradapt {

class UniqueFd {
 public:
  UniqueFd() = default;
  explicit UniqueFd(int fd) : fd_(fd) {}
  UniqueFd(UniqueFd&& other) noexcept : fd_(other.release()) {}
  UniqueFd& operator=(UniqueFd&& other) noexcept {
    reset(other.release());
    return *this;
  }
  UniqueFd(const UniqueFd&) = delete;
  UniqueFd& operator=(const UniqueFd&) = delete;
  ~UniqueFd() { reset(); }

  int get() const { return fd_; }
  int release() {
    const int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset(int fd = -1);

 private:
  int fd_ = -1;
};

inline constexpr std::chrono::milliseconds kDefaultBackendTimeout{30000};

namespace internal {

struct SpawnedProcess {
  UniqueFd from_child;
  UniqueFd to_child;
  pid_t pid = -1;
};

SpawnedProcess Spawn(const std::string& command);
UniqueFd ConnectTcp(const std::string& address);

}  // namespace internal

// Line protocol over a pair of file descriptors. Writes are serialized;
// replies that arrive for other requests are buffered until awaited.
class LineStreamBackend : public MlmBackend {
 public:
  LineStreamBackend(UniqueFd read_fd, UniqueFd write_fd,
                    std::chrono::milliseconds timeout);

  void Send(const MaskQuery& query) override;
  MaskReply Await(std::uint64_t id) override;

 protected:
  void CloseWrite() { write_fd_.reset(); }

 private:
  // Reads one line, throwing TransportError on timeout or end of stream.
  std::string ReadLine(std::chrono::steady_clock::time_point deadline);

  UniqueFd read_fd_;
  UniqueFd write_fd_;
  std::chrono::milliseconds timeout_;
  std::mutex write_mu_;
  std::mutex read_mu_;
  std::string buffer_;
  std::map<std::uint64_t, MaskReply> arrived_;
  std::mutex ids_mu_;
  std::set<std::uint64_t> outstanding_;
};

// Launches `command` through /bin/sh and speaks the protocol over its
// standard input and output. The child's stderr is inherited. Ignores SIGPIPE
// for the process so a dead backend surfaces as a TransportError.
class ProcessBackend : public LineStreamBackend {
 public:
  ProcessBackend(const std::string& command,
                 std::chrono::milliseconds timeout = kDefaultBackendTimeout);
  ~ProcessBackend() override;

  pid_t pid() const { return pid_; }

 private:
  ProcessBackend(internal::SpawnedProcess spawned,
                 std::chrono::milliseconds timeout);
  pid_t pid_ = -1;
};

// Same line protocol over a TCP connection to "host:port".
class TcpBackend : public LineStreamBackend {
 public:
  explicit TcpBackend(const std::string& address,
                      std::chrono::milliseconds timeout =
                          kDefaultBackendTimeout);

 private:
  TcpBackend(std::pair<UniqueFd, UniqueFd> duplex,
             std::chrono::milliseconds timeout);
};

}  // namespace neradapt

#endif  // NERADAPT_STREAM_BACKEND_H_
