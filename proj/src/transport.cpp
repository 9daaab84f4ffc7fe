#include "sbb/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <utility>

#include "sbb/error.hpp"
#include "sbb/imageio.hpp"

namespace sbb {

namespace {

constexpr std::size_t kWireHeaderSize = 10;
constexpr std::uint32_t kMaxWirePayload = 256u << 20; // 256 MiB

struct Socket {
    int fd = -1;
    Socket() = default;
    explicit Socket(int f) : fd(f) {}
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    Socket(Socket&& o) noexcept : fd(std::exchange(o.fd, -1)) {}
    ~Socket() {
        if (fd >= 0) ::close(fd);
    }
};

bool write_full(int fd, const std::uint8_t* data, std::size_t n) {
    while (n > 0) {
        const ssize_t k = ::send(fd, data, n, MSG_NOSIGNAL);
        if (k < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        if (k == 0) return false;
        data += k;
        n -= static_cast<std::size_t>(k);
    }
    return true;
}

enum class ReadResult { Ok, Eof, Failed };

// Eof is reported only when the stream ends before the first byte.
ReadResult read_full(int fd, std::uint8_t* data, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        const ssize_t k = ::recv(fd, data + got, n - got, 0);
        if (k < 0) {
            if (errno == EINTR) continue;
            return ReadResult::Failed;
        }
        if (k == 0) return got == 0 ? ReadResult::Eof : ReadResult::Failed;
        got += static_cast<std::size_t>(k);
    }
    return ReadResult::Ok;
}

void store_u32_be(std::uint8_t* p, std::uint32_t v) {
    p[0] = static_cast<std::uint8_t>(v >> 24);
    p[1] = static_cast<std::uint8_t>(v >> 16);
    p[2] = static_cast<std::uint8_t>(v >> 8);
    p[3] = static_cast<std::uint8_t>(v);
}

std::uint32_t load_u32_be(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

Socket connect_to(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &result);
    if (rc != 0)
        throw Error(ErrorCode::ConnectionFailed,
                    "cannot resolve " + host + ": " + ::gai_strerror(rc));
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
        if (s.fd < 0) continue;
        if (::connect(s.fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            ::freeaddrinfo(result);
            return s;
        }
    }
    const int err = errno;
    ::freeaddrinfo(result);
    throw Error(ErrorCode::ConnectionFailed,
                "cannot connect to " + host + ":" + std::to_string(port) + ": " +
                    std::strerror(err));
}

} // namespace

std::vector<std::uint8_t> encode_wire_frame(const WireFrame& frame) {
    if (frame.total_frames == 0 || frame.frame_index >= frame.total_frames)
        throw Error(ErrorCode::InvalidArgument,
                    "frame index " + std::to_string(frame.frame_index) +
                        " not below total " + std::to_string(frame.total_frames));
    if (frame.payload.size() > kMaxWirePayload)
        throw Error(ErrorCode::InvalidArgument, "payload too large for the wire");
    std::array<std::uint8_t, kWireHeaderSize> header;
    std::copy(kWireMagic.begin(), kWireMagic.end(), header.begin());
    header[4] = frame.frame_index;
    header[5] = frame.total_frames;
    store_u32_be(header.data() + 6, static_cast<std::uint32_t>(frame.payload.size()));
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(kWireHeaderSize + frame.payload.size());
    out.insert(out.end(), frame.payload.begin(), frame.payload.end());
    return out;
}

SendReport send_files(const std::string& host, std::uint16_t port,
                      const std::vector<std::vector<std::uint8_t>>& image_files,
                      const SendOptions& options) {
    if (image_files.empty() || image_files.size() > 255)
        throw Error(ErrorCode::InvalidArgument,
                    "can send 1..255 files per connection, got " +
                        std::to_string(image_files.size()));

    Socket sock = connect_to(host, port);
    timeval tv{};
    tv.tv_sec = options.ack_timeout_ms / 1000;
    tv.tv_usec = (options.ack_timeout_ms % 1000) * 1000;
    ::setsockopt(sock.fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));

    SendReport report;
    for (std::size_t i = 0; i < image_files.size(); ++i) {
        WireFrame frame;
        frame.frame_index = static_cast<std::uint8_t>(i);
        frame.total_frames = static_cast<std::uint8_t>(image_files.size());
        frame.payload = image_files[i];
        const auto bytes = encode_wire_frame(frame);
        if (!write_full(sock.fd, bytes.data(), bytes.size()))
            throw Error(ErrorCode::ConnectionFailed,
                        "send failed on frame " + std::to_string(i) + ": " +
                            std::strerror(errno));

        std::uint8_t ack = 0;
        for (;;) {
            const ssize_t k = ::recv(sock.fd, &ack, 1, 0);
            if (k == 1) break;
            if (k == 0)
                throw Error(ErrorCode::ConnectionFailed,
                            "connection closed while awaiting ack for frame " +
                                std::to_string(i));
            if (errno == EINTR) continue;
            if (errno == EAGAIN || errno == EWOULDBLOCK)
                throw Error(ErrorCode::AckTimeout,
                            "no ack for frame " + std::to_string(i) + " within " +
                                std::to_string(options.ack_timeout_ms) + " ms");
            throw Error(ErrorCode::ConnectionFailed,
                        std::string("ack read failed: ") + std::strerror(errno));
        }
        if (ack == kAckReject)
            throw Error(ErrorCode::AckRejected, "receiver rejected frame " + std::to_string(i));
        if (ack != kAckAccept)
            throw Error(ErrorCode::AckRejected,
                        "unexpected ack byte for frame " + std::to_string(i));
        report.acks.push_back(ack);
    }
    return report;
}

Receiver::Receiver(const std::string& host, std::uint16_t port,
                   std::filesystem::path out_dir, ReceiverOptions options)
    : out_dir_(std::move(out_dir)), options_(std::move(options)) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* result = nullptr;
    const int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(),
                                 std::to_string(port).c_str(), &hints, &result);
    if (rc != 0)
        throw Error(ErrorCode::BindFailed,
                    "cannot resolve " + host + ": " + ::gai_strerror(rc));

    int fd = -1;
    int bind_errno = 0;
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        const int yes = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        bind_errno = errno;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(result);
    if (fd < 0)
        throw Error(ErrorCode::BindFailed,
                    "cannot bind " + host + ":" + std::to_string(port) + ": " +
                        std::strerror(bind_errno));
    if (::listen(fd, 16) != 0) {
        const int err = errno;
        ::close(fd);
        throw Error(ErrorCode::BindFailed, std::string("listen failed: ") + std::strerror(err));
    }

    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
    listen_fd_ = fd;
    port_ = ntohs(bound.sin_port);
}

Receiver::~Receiver() { stop(); }

void Receiver::run() { accept_loop(); }

void Receiver::start() {
    accept_thread_ = std::thread(&Receiver::accept_loop, this);
}

void Receiver::stop() {
    if (stopping_.exchange(true)) {
        if (accept_thread_.joinable()) accept_thread_.join();
        return;
    }
    if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
    if (accept_thread_.joinable()) accept_thread_.join();
    {
        std::lock_guard lock(mutex_);
        for (int fd : conn_fds_)
            if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
    }
    std::vector<std::thread> threads;
    {
        std::lock_guard lock(mutex_);
        threads.swap(conn_threads_);
    }
    for (std::thread& t : threads)
        if (t.joinable()) t.join();
    if (listen_fd_ >= 0) {
        ::close(listen_fd_);
        listen_fd_ = -1;
    }
}

void Receiver::accept_loop() {
    while (!stopping_.load()) {
        const int cfd = ::accept(listen_fd_, nullptr, nullptr);
        if (cfd < 0) {
            if (errno == EINTR) continue;
            break; // listening socket shut down
        }
        std::lock_guard lock(mutex_);
        if (stopping_.load()) {
            ::close(cfd);
            break;
        }
        conn_fds_.push_back(cfd);
        const std::size_t slot = conn_fds_.size() - 1;
        conn_threads_.emplace_back(&Receiver::handle_connection, this, cfd, slot);
    }
}

void Receiver::handle_connection(int fd, std::size_t slot) {
    // frame-set assembly state is per connection: total -> index -> payload
    std::map<int, std::map<int, std::vector<std::uint8_t>>> pending;

    auto reject = [&]() {
        const std::uint8_t nak = kAckReject;
        write_full(fd, &nak, 1);
    };

    for (;;) {
        std::uint8_t header[kWireHeaderSize];
        const ReadResult r = read_full(fd, header, kWireHeaderSize);
        if (r == ReadResult::Eof) break; // clean end of connection
        if (r == ReadResult::Failed) {
            log("protocol violation: truncated frame header");
            reject();
            break;
        }
        if (!std::equal(kWireMagic.begin(), kWireMagic.end(), header)) {
            log("protocol violation: bad wire magic");
            reject();
            break;
        }
        const int index = header[4];
        const int total = header[5];
        const std::uint32_t payload_len = load_u32_be(header + 6);
        if (total == 0 || index >= total || payload_len > kMaxWirePayload) {
            log("protocol violation: bad frame header fields");
            reject();
            break;
        }

        std::vector<std::uint8_t> payload(payload_len);
        if (read_full(fd, payload.data(), payload_len) != ReadResult::Ok) {
            log("protocol violation: truncated frame payload");
            reject();
            break;
        }

        const auto name = "frame_" + std::to_string(total) + "_" + std::to_string(index) +
                          "." + std::string(payload_extension(payload));
        const auto path = out_dir_ / name;
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out.write(reinterpret_cast<const char*>(payload.data()),
                      static_cast<std::streamsize>(payload.size()));
            if (!out) {
                log("cannot persist " + path.string());
                reject();
                break;
            }
        }

        const std::uint8_t ok = kAckAccept;
        if (!write_full(fd, &ok, 1)) break;
        log("received frame " + std::to_string(index) + "/" + std::to_string(total) +
            " (" + std::to_string(payload_len) + " bytes) -> " + path.string());

        if (options_.key) {
            auto& set = pending[total];
            set[index] = std::move(payload);
            if (static_cast<int>(set.size()) == total) {
                try {
                    std::vector<RasterImage> images;
                    images.reserve(set.size());
                    for (auto& [idx, bytes] : set) images.push_back(read_image(bytes));
                    const auto message = extract_message(images, *options_.key, options_.channel);
                    const auto msg_path = out_dir_ / "message.bin";
                    std::ofstream out(msg_path, std::ios::binary | std::ios::trunc);
                    out.write(reinterpret_cast<const char*>(message.data()),
                              static_cast<std::streamsize>(message.size()));
                    if (!out)
                        log("cannot persist " + msg_path.string());
                    else
                        log("decoded message (" + std::to_string(message.size()) +
                            " bytes) -> " + msg_path.string());
                } catch (const Error& e) {
                    log(std::string("decode failed: ") + e.what());
                }
            }
        }
    }

    {
        std::lock_guard lock(mutex_);
        conn_fds_[slot] = -1;
    }
    ::close(fd);
}

void Receiver::log(const std::string& line) {
    if (options_.quiet) return;
    std::lock_guard lock(log_mutex_);
    std::cerr << line << '\n';
}

void serve(const std::string& host, std::uint16_t port,
           const std::filesystem::path& out_dir, const ReceiverOptions& options) {
    Receiver receiver(host, port, out_dir, options);
    receiver.run();
}

} // namespace sbb
