// sbb — hide short messages in billboard images and move them to a
// display endpoint over TCP.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "sbb/codec.hpp"
#include "sbb/error.hpp"
#include "sbb/imageio.hpp"
#include "sbb/key.hpp"
#include "sbb/metrics.hpp"
#include "sbb/transport.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw sbb::Error(sbb::ErrorCode::IoFailure, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw sbb::Error(sbb::ErrorCode::IoFailure, "cannot read " + path.string());
    return bytes;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw sbb::Error(sbb::ErrorCode::IoFailure,
                         "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw sbb::Error(sbb::ErrorCode::IoFailure, "cannot write " + path.string());
}

struct HostPort {
    std::string host;
    std::uint16_t port = 0;
};

HostPort split_host_port(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
        throw sbb::Error(sbb::ErrorCode::InvalidArgument,
                         "expected HOST:PORT, got \"" + text + "\"");
    const std::string port_text = text.substr(colon + 1);
    unsigned long port = 0;
    try {
        std::size_t used = 0;
        port = std::stoul(port_text, &used);
        if (used != port_text.size()) throw std::invalid_argument(port_text);
    } catch (const std::exception&) {
        throw sbb::Error(sbb::ErrorCode::InvalidArgument,
                         "bad port in \"" + text + "\"");
    }
    if (port > 65535)
        throw sbb::Error(sbb::ErrorCode::InvalidArgument, "port out of range in \"" + text + "\"");
    return {text.substr(0, colon), static_cast<std::uint16_t>(port)};
}

std::string host_port_validator(const std::string& text) {
    try {
        split_host_port(text);
    } catch (const sbb::Error&) {
        return "expected HOST:PORT with a numeric port, got \"" + text + "\"";
    }
    return {};
}

std::string stego_name(const fs::path& input, const sbb::RasterImage& image) {
    return input.stem().string() + ".stego." +
           std::string(sbb::format_extension(sbb::image_format(image)));
}

int run_keygen(int rows, int cols, std::optional<std::uint32_t> seed) {
    std::mt19937 rng(seed ? *seed : std::random_device{}());
    std::cout << sbb::key_to_hex(sbb::generate_key(rows, cols, rng)) << "\n";
    return 0;
}

int run_capacity(const std::string& key_hex) {
    std::cout << sbb::frame_capacity(sbb::key_from_hex(key_hex)) << "\n";
    return 0;
}

int run_embed(const std::string& key_hex, const std::vector<std::string>& cover_paths,
              const std::string& msg_path, const std::string& out_dir, int channel) {
    const auto key = sbb::key_from_hex(key_hex);
    const auto message = read_file(msg_path);
    std::vector<sbb::RasterImage> covers;
    covers.reserve(cover_paths.size());
    for (const auto& path : cover_paths) covers.push_back(sbb::load_image_file(path));

    const auto stegos = sbb::embed_message(std::move(covers), key, message, channel);
    const std::size_t used = sbb::frames_needed(key, message.size());

    fs::create_directories(out_dir);
    std::string written; // nothing reaches stdout until every file is on disk
    for (std::size_t i = 0; i < used; ++i) {
        const fs::path out = fs::path(out_dir) / stego_name(cover_paths[i], stegos[i]);
        sbb::save_image_file(out, stegos[i]);
        written += out.string() + "\n";
    }
    std::cout << written;
    return 0;
}

int run_extract(const std::string& key_hex, const std::vector<std::string>& stego_paths,
                const std::string& out_path, int channel) {
    const auto key = sbb::key_from_hex(key_hex);
    std::vector<sbb::RasterImage> stegos;
    stegos.reserve(stego_paths.size());
    for (const auto& path : stego_paths) stegos.push_back(sbb::load_image_file(path));
    write_file(out_path, sbb::extract_message(stegos, key, channel));
    return 0;
}

int run_psnr(const std::string& a_path, const std::string& b_path) {
    const auto report = sbb::compare(sbb::load_image_file(a_path), sbb::load_image_file(b_path));
    std::cout << report.to_record() << "\n";
    return 0;
}

int run_send(const std::string& to, const std::vector<std::string>& paths, int timeout_ms) {
    const auto [host, port] = split_host_port(to);
    std::vector<std::vector<std::uint8_t>> files;
    files.reserve(paths.size());
    for (const auto& path : paths) files.push_back(read_file(path));
    const auto report = sbb::send_files(host, port, files, {.ack_timeout_ms = timeout_ms});
    std::cout << "acked " << report.acks.size() << " of " << files.size() << " frames\n";
    return 0;
}

int run_display(const std::string& listen, const std::string& out_dir,
                std::optional<std::string> key_hex, int channel) {
    const auto [host, port] = split_host_port(listen);
    fs::create_directories(out_dir);
    sbb::ReceiverOptions options;
    options.channel = channel;
    if (key_hex) options.key = sbb::key_from_hex(*key_hex);
    sbb::Receiver receiver(host, port, out_dir, options);
    std::cout << "listening on " << host << ":" << receiver.port() << std::endl;
    receiver.run();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"keyed block-LSB steganography for billboard images"};
    app.require_subcommand(1);

    // keygen
    auto* keygen = app.add_subcommand("keygen", "generate a key and print its hex form");
    int kg_rows = 0, kg_cols = 0;
    std::optional<std::uint32_t> kg_seed;
    keygen->add_option("--rows", kg_rows, "block grid rows (1..255)")->required();
    keygen->add_option("--cols", kg_cols, "block grid columns (1..255)")->required();
    keygen->add_option("--seed", kg_seed, "seed for reproducible pattern bits");

    // capacity
    auto* capacity = app.add_subcommand("capacity", "print payload bytes per frame for a key");
    std::string cap_key;
    capacity->add_option("--key", cap_key, "8-hex-digit key")->required();

    // embed
    auto* embed = app.add_subcommand("embed", "hide a message file in cover images");
    std::string em_key, em_msg, em_out_dir;
    std::vector<std::string> em_in;
    int em_channel = sbb::kDefaultRgbChannel;
    embed->add_option("--key", em_key, "8-hex-digit key")->required();
    embed->add_option("--in", em_in, "cover images (PGM/PPM), frame order")
        ->required()
        ->expected(-1);
    embed->add_option("--msg", em_msg, "message file to hide")->required();
    embed->add_option("--out-dir", em_out_dir, "directory for stego images")->required();
    embed->add_option("--channel", em_channel, "designated RGB channel (default blue)");

    // extract
    auto* extract = app.add_subcommand("extract", "recover a message from stego images");
    std::string ex_key, ex_out;
    std::vector<std::string> ex_in;
    int ex_channel = sbb::kDefaultRgbChannel;
    extract->add_option("--key", ex_key, "8-hex-digit key")->required();
    extract->add_option("--in", ex_in, "stego images, any order")->required()->expected(-1);
    extract->add_option("--out", ex_out, "output file for the recovered message")->required();
    extract->add_option("--channel", ex_channel, "designated RGB channel (default blue)");

    // psnr
    auto* psnr = app.add_subcommand("psnr", "compare two images (MSE/PSNR/max diff)");
    std::string ps_a, ps_b;
    psnr->add_option("--a", ps_a, "first image")->required();
    psnr->add_option("--b", ps_b, "second image")->required();

    // send
    auto* send = app.add_subcommand("send", "stream image files to a display endpoint");
    std::string sn_to;
    std::vector<std::string> sn_in;
    int sn_timeout = 5000;
    send->add_option("--to", sn_to, "receiver HOST:PORT")
        ->required()
        ->check(host_port_validator);
    send->add_option("--in", sn_in, "image files, frame order")->required()->expected(-1);
    send->add_option("--timeout-ms", sn_timeout, "per-frame ack timeout");

    // display
    auto* display = app.add_subcommand("display", "receive frames and persist them");
    std::string dp_listen, dp_out_dir;
    std::optional<std::string> dp_key;
    int dp_channel = sbb::kDefaultRgbChannel;
    display->add_option("--listen", dp_listen, "bind HOST:PORT (port 0 picks one)")
        ->required()
        ->check(host_port_validator);
    display->add_option("--out-dir", dp_out_dir, "directory for received frames")->required();
    display->add_option("--key", dp_key, "decode completed frame sets with this key");
    display->add_option("--channel", dp_channel, "designated RGB channel (default blue)");

    try {
        app.parse(argc, argv);
        if (keygen->parsed()) return run_keygen(kg_rows, kg_cols, kg_seed);
        if (capacity->parsed()) return run_capacity(cap_key);
        if (embed->parsed()) return run_embed(em_key, em_in, em_msg, em_out_dir, em_channel);
        if (extract->parsed()) return run_extract(ex_key, ex_in, ex_out, ex_channel);
        if (psnr->parsed()) return run_psnr(ps_a, ps_b);
        if (send->parsed()) return run_send(sn_to, sn_in, sn_timeout);
        if (display->parsed()) return run_display(dp_listen, dp_out_dir, dp_key, dp_channel);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    } catch (const sbb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}
