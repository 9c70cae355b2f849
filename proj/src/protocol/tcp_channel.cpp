#include "qkdpp/protocol/tcp_channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <system_error>
#include <thread>

#include "qkdpp/errors.hpp"

namespace qkdpp {
namespace {

[[noreturn]] void fail(const std::string& what) { throw std::system_error(errno, std::generic_category(), what); }

sockaddr_in resolve(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const int rc = ::getaddrinfo(host.c_str(), nullptr, &hints, &res);
  if (rc != 0 || res == nullptr) throw InvalidSpec("cannot resolve host '" + host + "': " + ::gai_strerror(rc));
  sockaddr_in addr{};
  std::memcpy(&addr, res->ai_addr, sizeof(addr));
  ::freeaddrinfo(res);
  addr.sin_port = htons(port);
  return addr;
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

// false on orderly shutdown before the first byte
bool read_exact(int fd, std::uint8_t* p, std::size_t n, bool allow_eof) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t r = ::recv(fd, p + got, n - got, 0);
    if (r == 0) {
      if (allow_eof && got == 0) return false;
      throw ChannelClosed("tcp peer closed mid-frame");
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      throw ChannelClosed(std::string("tcp receive failed: ") + std::strerror(errno));
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

}  // namespace

std::pair<std::string, std::uint16_t> parse_address(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == addr.size()) {
    throw InvalidSpec("address must be HOST:PORT, got '" + addr + "'");
  }
  const std::string port_s = addr.substr(colon + 1);
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(port_s, &used);
    if (used != port_s.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw InvalidSpec("bad port in address '" + addr + "'");
  }
  if (port > 65535) throw InvalidSpec("port out of range in address '" + addr + "'");
  return {addr.substr(0, colon), static_cast<std::uint16_t>(port)};
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) : fd_(::socket(AF_INET, SOCK_STREAM, 0)) {
  if (fd_ < 0) fail("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = resolve(host, port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd_);
    fail("bind");
  }
  if (::listen(fd_, 1) != 0) {
    ::close(fd_);
    fail("listen");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() { ::close(fd_); }

TcpChannel TcpListener::accept() {
  for (;;) {
    const int c = ::accept(fd_, nullptr, nullptr);
    if (c >= 0) {
      set_nodelay(c);
      return TcpChannel(c);
    }
    if (errno != EINTR) fail("accept");
  }
}

TcpChannel TcpChannel::listen(const std::string& host, std::uint16_t port) {
  TcpListener l(host, port);
  return l.accept();
}

TcpChannel TcpChannel::connect(const std::string& host, std::uint16_t port, int timeout_ms) {
  const sockaddr_in addr = resolve(host, port);
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail("socket");
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) == 0) {
      set_nodelay(fd);
      return TcpChannel(fd);
    }
    const int err = errno;
    ::close(fd);
    if (std::chrono::steady_clock::now() >= deadline) {
      errno = err;
      fail("connect to " + host + ":" + std::to_string(port));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

TcpChannel::TcpChannel(TcpChannel&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

TcpChannel::~TcpChannel() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpChannel::send(const MessageFrame& f) {
  if (fd_ < 0) throw ChannelClosed("send on closed channel");
  const auto bytes = encode_frame(f);
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t r = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw ChannelClosed(std::string("tcp send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(r);
  }
}

MessageFrame TcpChannel::receive() {
  if (fd_ < 0) throw ChannelClosed("receive on closed channel");
  std::vector<std::uint8_t> buf(5);
  if (!read_exact(fd_, buf.data(), 5, true)) throw ChannelClosed("peer closed the channel");
  const std::uint32_t plen =
      std::uint32_t{buf[0]} | (std::uint32_t{buf[1]} << 8) | (std::uint32_t{buf[2]} << 16) | (std::uint32_t{buf[3]} << 24);
  const std::size_t pbytes = (std::size_t{plen} + 7) / 8;
  buf.resize(5 + pbytes + 2);
  read_exact(fd_, buf.data() + 5, pbytes + 2, false);
  const std::size_t tbits = std::size_t{buf[5 + pbytes]} | (std::size_t{buf[6 + pbytes]} << 8);
  const std::size_t tbytes = (tbits + 7) / 8;
  buf.resize(buf.size() + tbytes);
  read_exact(fd_, buf.data() + 7 + pbytes, tbytes, false);
  return decode_frame(buf);
}

void TcpChannel::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
}

}  // namespace qkdpp
