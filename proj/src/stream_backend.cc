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

#include "neradapt/stream_backend.h"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "neradapt/errors.h"

namespace neradapt {

void UniqueFd::reset(int fd) {
  if (fd_ >= 0) ::close(fd_);
  fd_ = fd;
}

namespace internal {

SpawnedProcess Spawn(const std::string& command) {
  ::signal(SIGPIPE, SIG_IGN);
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) {
    throw TransportError(std::string("pipe: ") + std::strerror(errno));
  }
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw TransportError(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) {
      ::close(fd);
    }
    throw TransportError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(),
            static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  SpawnedProcess spawned;
  spawned.from_child = UniqueFd(from_child[0]);
  spawned.to_child = UniqueFd(to_child[1]);
  spawned.pid = pid;
  return spawned;
}

UniqueFd ConnectTcp(const std::string& address) {
  ::signal(SIGPIPE, SIG_IGN);
  const auto colon = address.rfind(':');
  if (colon == std::string::npos) {
    throw TransportError("backend address '" + address +
                         "' is not of the form host:port");
  }
  const std::string host = address.substr(0, colon);
  const std::string port = address.substr(colon + 1);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* results = nullptr;
  if (const int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints,
                                   &results);
      rc != 0) {
    throw TransportError("cannot resolve '" + address +
                         "': " + ::gai_strerror(rc));
  }
  UniqueFd socket_fd;
  for (addrinfo* ai = results; ai != nullptr; ai = ai->ai_next) {
    UniqueFd fd(::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC,
                         ai->ai_protocol));
    if (fd.get() < 0) continue;
    if (::connect(fd.get(), ai->ai_addr, ai->ai_addrlen) == 0) {
      socket_fd = std::move(fd);
      break;
    }
  }
  ::freeaddrinfo(results);
  if (socket_fd.get() < 0) {
    throw TransportError("cannot connect to backend at '" + address + "'");
  }
  return socket_fd;
}

}  // namespace internal

namespace {

// Separate descriptors for the reading and writing side of one socket.
std::pair<UniqueFd, UniqueFd> SplitSocket(UniqueFd socket) {
  UniqueFd reader(::fcntl(socket.get(), F_DUPFD_CLOEXEC, 0));
  if (reader.get() < 0) {
    throw TransportError(std::string("dup: ") + std::strerror(errno));
  }
  return {std::move(reader), std::move(socket)};
}

}  // namespace

LineStreamBackend::LineStreamBackend(UniqueFd read_fd, UniqueFd write_fd,
                                     std::chrono::milliseconds timeout)
    : read_fd_(std::move(read_fd)),
      write_fd_(std::move(write_fd)),
      timeout_(timeout) {}

void LineStreamBackend::Send(const MaskQuery& query) {
  std::string line = FormatQuery(query);
  line.push_back('\n');
  std::lock_guard<std::mutex> lock(write_mu_);
  if (write_fd_.get() < 0) throw TransportError("backend stream is closed");
  {
    std::lock_guard<std::mutex> ids(ids_mu_);
    if (!outstanding_.insert(query.id).second) {
      throw ProtocolError("request id " + std::to_string(query.id) +
                          " is already in flight");
    }
  }
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n =
        ::write(write_fd_.get(), line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("writing to backend: ") +
                           std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string LineStreamBackend::ReadLine(
    std::chrono::steady_clock::time_point deadline) {
  while (true) {
    const auto newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      throw TransportError("backend timed out after " +
                           std::to_string(timeout_.count()) + " ms");
    }
    pollfd pfd{read_fd_.get(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("poll: ") + std::strerror(errno));
    }
    if (ready == 0) continue;
    char chunk[4096];
    const ssize_t n = ::read(read_fd_.get(), chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("reading from backend: ") +
                           std::strerror(errno));
    }
    if (n == 0) throw TransportError("backend closed the stream");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

MaskReply LineStreamBackend::Await(std::uint64_t id) {
  std::lock_guard<std::mutex> lock(read_mu_);
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    if (auto node = arrived_.extract(id); !node.empty()) {
      std::lock_guard<std::mutex> ids(ids_mu_);
      outstanding_.erase(id);
      return std::move(node.mapped());
    }
    const std::string line = ReadLine(deadline);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    MaskReply reply = ParseReply(line);
    const std::uint64_t reply_id = reply.id;
    {
      std::lock_guard<std::mutex> ids(ids_mu_);
      if (!outstanding_.contains(reply_id) || arrived_.contains(reply_id)) {
        throw ProtocolError("backend replied to unknown or already answered "
                            "request " + std::to_string(reply_id));
      }
    }
    arrived_[reply_id] = std::move(reply);
  }
}

ProcessBackend::ProcessBackend(const std::string& command,
                               std::chrono::milliseconds timeout)
    : ProcessBackend(internal::Spawn(command), timeout) {}

ProcessBackend::ProcessBackend(internal::SpawnedProcess spawned,
                               std::chrono::milliseconds timeout)
    : LineStreamBackend(std::move(spawned.from_child),
                        std::move(spawned.to_child), timeout),
      pid_(spawned.pid) {}

ProcessBackend::~ProcessBackend() {
  CloseWrite();
  int status = 0;
  for (int i = 0; i < 200; ++i) {
    if (::waitpid(pid_, &status, WNOHANG) != 0) return;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ::kill(pid_, SIGKILL);
  ::waitpid(pid_, &status, 0);
}

TcpBackend::TcpBackend(const std::string& address,
                       std::chrono::milliseconds timeout)
    : TcpBackend(SplitSocket(internal::ConnectTcp(address)), timeout) {}

TcpBackend::TcpBackend(std::pair<UniqueFd, UniqueFd> duplex,
                       std::chrono::milliseconds timeout)
    : LineStreamBackend(std::move(duplex.first), std::move(duplex.second),
                        timeout) {}

}  // namespace neradapt
