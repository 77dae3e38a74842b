#!/usr/bin/env python3
# Copyright 2026 The screenparse Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rasterizes a TrueType font into a screenparse glyph atlas (.spfa).

The atlas is what the C++ renderer consumes; it never touches TrueType
itself. Layout (all integers little-endian):

  "SPFA" u32 version=1
  u32 ref_px  i32 ascent  i32 descent  u32 glyph_count
  glyph_count x {
    u32 codepoint  u32 advance_q6  i32 left  i32 top  u32 width  u32 height
    width*height coverage bytes, row-major
  }

`advance_q6` is the pen advance at ref_px in 1/64 pixel. `left`/`top` place
the bitmap relative to the pen position and the top of the line box.

  gen_font_atlas.py FONT.ttf out.spfa            # atlas file for --font-dir
  gen_font_atlas.py FONT.ttf out.inc --cxx NAME  # zlib-compressed C++ array
"""

import argparse
import struct
import zlib

from PIL import Image, ImageDraw, ImageFont

CODEPOINTS = (
    list(range(0x20, 0x7F))
    + list(range(0xA0, 0x100))
    + [0x152, 0x153, 0x2013, 0x2014, 0x2018, 0x2019, 0x201C, 0x201D,
       0x2022, 0x2026, 0x2039, 0x203A, 0x20AC, 0x2122, 0xFFFD]
)


def build_atlas(font_path, ref_px):
  font = ImageFont.truetype(font_path, ref_px)
  ascent, descent = font.getmetrics()
  pad = ref_px
  glyphs = []
  for cp in CODEPOINTS:
    ch = chr(cp)
    canvas = Image.new("L", (ref_px * 3, ref_px * 3), 0)
    ImageDraw.Draw(canvas).text((pad, pad), ch, font=font, fill=255,
                                anchor="la")
    bbox = canvas.getbbox()
    advance_q6 = int(round(font.getlength(ch) * 64))
    if bbox is None:
      glyphs.append((cp, advance_q6, 0, 0, 0, 0, b""))
      continue
    x0, y0, x1, y1 = bbox
    crop = canvas.crop(bbox)
    glyphs.append((cp, advance_q6, x0 - pad, y0 - pad, x1 - x0, y1 - y0,
                   crop.tobytes()))
  out = bytearray(b"SPFA")
  out += struct.pack("<IIiiI", 1, ref_px, ascent, descent, len(glyphs))
  for cp, adv, left, top, w, h, data in glyphs:
    out += struct.pack("<IIiiII", cp, adv, left, top, w, h)
    out += data
  return bytes(out)


def main():
  parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
  parser.add_argument("font")
  parser.add_argument("out")
  parser.add_argument("--ref-px", type=int, default=48)
  parser.add_argument("--cxx", metavar="NAME",
                      help="emit a C++ include with a compressed array")
  args = parser.parse_args()
  atlas = build_atlas(args.font, args.ref_px)
  if not args.cxx:
    with open(args.out, "wb") as f:
      f.write(atlas)
    return
  packed = zlib.compress(atlas, 9)
  with open(args.out, "w") as f:
    f.write("// Generated by tools/gen_font_atlas.py. Do not edit.\n")
    f.write("// Glyphs rasterized from DejaVu Sans; see fonts/LICENSE_DEJAVU.\n")
    f.write(f"constexpr std::size_t {args.cxx}RawSize = {len(atlas)};\n")
    f.write(f"constexpr unsigned char {args.cxx}[] = {{\n")
    for i in range(0, len(packed), 16):
      f.write("    " + ", ".join(f"0x{b:02x}" for b in packed[i:i + 16])
              + ",\n")
    f.write("};\n")


if __name__ == "__main__":
  main()
