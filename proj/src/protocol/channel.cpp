#include "qkdpp/protocol/channel.hpp"

namespace qkdpp {

class InMemoryLink::End : public Channel {
 public:
  End(std::shared_ptr<Queue> out, std::shared_ptr<Queue> in) : out_(std::move(out)), in_(std::move(in)) {}

  void send(const MessageFrame& f) override {
    auto bytes = encode_frame(f);
    {
      std::lock_guard lock(out_->mu);
      if (out_->closed) throw ChannelClosed("send on closed channel");
      out_->items.push_back(std::move(bytes));
    }
    out_->cv.notify_all();
  }

  MessageFrame receive() override {
    std::unique_lock lock(in_->mu);
    in_->cv.wait(lock, [&] { return !in_->items.empty() || in_->closed; });
    if (in_->items.empty()) throw ChannelClosed("peer closed the channel");
    auto bytes = std::move(in_->items.front());
    in_->items.pop_front();
    lock.unlock();
    return decode_frame(bytes);
  }

  // Closing either end shuts both directions, so a blocked peer wakes up.
  void close() override {
    for (auto* q : {out_.get(), in_.get()}) {
      {
        std::lock_guard lock(q->mu);
        q->closed = true;
      }
      q->cv.notify_all();
    }
  }

 private:
  std::shared_ptr<Queue> out_;
  std::shared_ptr<Queue> in_;
};

InMemoryLink::InMemoryLink()
    : a_to_b_(std::make_shared<Queue>()),
      b_to_a_(std::make_shared<Queue>()),
      alice_(std::make_unique<End>(a_to_b_, b_to_a_)),
      bob_(std::make_unique<End>(b_to_a_, a_to_b_)) {}

InMemoryLink::~InMemoryLink() = default;

Channel& InMemoryLink::alice() { return *alice_; }
Channel& InMemoryLink::bob() { return *bob_; }

void TamperingChannel::send(const MessageFrame& f) {
  if (f.type != t_.type) {
    inner_.send(f);
    return;
  }
  MessageFrame g = f;
  BitString& field = t_.in_tag ? g.tag : g.payload;
  if (!field.empty()) {
    field.flip(t_.bit % field.size());
    ++flips_;
  }
  inner_.send(g);
}

}  // namespace qkdpp
