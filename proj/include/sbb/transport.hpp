#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sbb/codec.hpp"
#include "sbb/key.hpp"

namespace sbb {

// Wire layout, one frame:
//
//   "SBB1" | frame_index u8 | total_frames u8 | payload_length u32 BE | payload
//
// The receiver answers every frame with one ack byte: 0x06 accept,
// 0x15 reject. One connection carries one message's frames.
inline constexpr std::array<std::uint8_t, 4> kWireMagic{'S', 'B', 'B', '1'};
inline constexpr std::uint8_t kAckAccept = 0x06;
inline constexpr std::uint8_t kAckReject = 0x15;

struct WireFrame {
    std::uint8_t frame_index = 0;
    std::uint8_t total_frames = 1;
    std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> encode_wire_frame(const WireFrame& frame);

struct SendOptions {
    int ack_timeout_ms = 5000;
};

struct SendReport {
    std::vector<std::uint8_t> acks; // one 0x06 per delivered frame
};

// Opens one connection, writes one frame per file in order with
// total_frames = list size, and waits for each ack.
SendReport send_files(const std::string& host, std::uint16_t port,
                      const std::vector<std::vector<std::uint8_t>>& image_files,
                      const SendOptions& options = {});

struct ReceiverOptions {
    std::optional<StegoKey> key; // decode completed frame sets when present
    int channel = kDefaultRgbChannel;
    bool quiet = false;
};

// Persists every accepted frame payload to
// out_dir/frame_<total>_<index>.<ext> and, when a key is configured,
// writes the recovered message to out_dir/message.bin once a connection
// has delivered a complete index set. Connections are isolated: a
// malformed frame gets a reject ack and drops only its own connection.
class Receiver {
  public:
    Receiver(const std::string& host, std::uint16_t port,
             std::filesystem::path out_dir, ReceiverOptions options = {});
    ~Receiver();

    Receiver(const Receiver&) = delete;
    Receiver& operator=(const Receiver&) = delete;

    std::uint16_t port() const { return port_; }

    void run();   // accept loop on the calling thread, until stop()
    void start(); // accept loop on a background thread
    void stop();

  private:
    void accept_loop();
    void handle_connection(int fd, std::size_t slot);
    void log(const std::string& line);

    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::filesystem::path out_dir_;
    ReceiverOptions options_;
    std::atomic<bool> stopping_{false};
    std::thread accept_thread_;
    std::mutex mutex_; // guards conn_fds_ and conn_threads_
    std::vector<int> conn_fds_;
    std::vector<std::thread> conn_threads_;
    std::mutex log_mutex_;
};

// Convenience wrapper: construct a Receiver and block in its accept loop.
void serve(const std::string& host, std::uint16_t port,
           const std::filesystem::path& out_dir, const ReceiverOptions& options = {});

} // namespace sbb
