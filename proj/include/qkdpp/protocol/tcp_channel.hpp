#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkdpp/protocol/channel.hpp"

namespace qkdpp {

/// Frames over one TCP stream. Bob listens, Alice connects. Frames are
/// self-delimiting, so the stream carries encoded frames back to back.
class TcpChannel : public Channel {
 public:
  /// Accepts exactly one connection on host:port.
  static TcpChannel listen(const std::string& host, std::uint16_t port);
  /// Retries for up to `timeout_ms` while the listener is not up yet.
  static TcpChannel connect(const std::string& host, std::uint16_t port, int timeout_ms = 10000);

  TcpChannel(TcpChannel&& other) noexcept;
  TcpChannel& operator=(TcpChannel&&) = delete;
  ~TcpChannel() override;

  void send(const MessageFrame& f) override;
  MessageFrame receive() override;
  void close() override;

 private:
  friend class TcpListener;
  explicit TcpChannel(int fd) : fd_(fd) {}
  int fd_;
};

/// Two-step listener for callers that need the port before accepting.
class TcpListener {
 public:
  /// Port 0 picks a free port, reported by port().
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  [[nodiscard]] std::uint16_t port() const noexcept { return port_; }
  TcpChannel accept();

 private:
  int fd_;
  std::uint16_t port_;
};

/// Splits "host:port". Throws InvalidSpec on a malformed address.
std::pair<std::string, std::uint16_t> parse_address(const std::string& addr);

}  // namespace qkdpp
