#include "sbb/grid.hpp"

#include <string>

#include "sbb/error.hpp"

namespace sbb {

BlockGrid make_grid(int width, int height, const StegoKey& key) {
    const int rows = key.rows;
    const int cols = key.cols;
    if (width < cols || height < rows)
        throw Error(ErrorCode::ImageTooSmall,
                    std::to_string(width) + "x" + std::to_string(height) +
                        " image cannot hold a " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " block grid");
    BlockGrid grid;
    grid.image_width = width;
    grid.image_height = height;
    grid.rows = rows;
    grid.cols = cols;
    grid.block_width = width / cols;
    grid.block_height = height / rows;
    return grid;
}

std::vector<PixelCoord> block_pixels(const BlockGrid& grid, int block_index) {
    if (block_index < 0 || block_index >= grid.block_count())
        throw Error(ErrorCode::IndexOutOfRange,
                    "block index " + std::to_string(block_index) + " not in 0.." +
                        std::to_string(grid.block_count() - 1));
    std::vector<PixelCoord> pixels;
    pixels.reserve(static_cast<std::size_t>(grid.block_pixel_count()));
    for_each_block_pixel(grid, block_index,
                         [&](int x, int y) { pixels.push_back({x, y}); });
    return pixels;
}

} // namespace sbb
