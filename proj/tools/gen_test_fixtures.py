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
"""Regenerates the checked-in test fixtures under tests/data.

The outputs are committed; rerun only when a fixture needs to change.
"""

import argparse
import json
import os
import random

from PIL import Image, ImageDraw, ImageFont

FONT = "/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf"


def font(size):
  try:
    return ImageFont.truetype(FONT, size)
  except OSError:
    return ImageFont.load_default()


def write_snapshot(root, page_id, url, size, nodes, draw_fn):
  d = os.path.join(root, page_id)
  os.makedirs(d, exist_ok=True)
  img = Image.new("RGB", size, "white")
  draw_fn(ImageDraw.Draw(img))
  img.save(os.path.join(d, "screenshot.png"), optimize=True)
  with open(os.path.join(d, "manifest.json"), "w") as f:
    json.dump({"url": url, "viewport_width": size[0],
               "capture_time": "2026-01-01T00:00:00Z",
               "screenshot_path": "screenshot.png", "dom_path": "dom.jsonl"}, f,
              indent=2)
    f.write("\n")
  with open(os.path.join(d, "dom.jsonl"), "w") as f:
    for n in nodes:
      f.write(json.dumps(n, ensure_ascii=False) + "\n")


def node(i, tag, visible, bbox, children=(), **kw):
  n = {"id": i, "tag": tag, "visible": visible, "bbox": list(bbox),
       "children": list(children)}
  n.update(kw)
  return n


def figure3(root):
  # Three language buttons (label text + logo) and a submit button.
  buttons = [("Python", "images/py_logo.png"),
             ("C++", "/static/img/cpp_logo.svg?v=3"),
             ("Java", "https://cdn.example.com/logos/java_logo.png")]
  nodes = [
      node(0, "html", True, (0, 0, 1024, 360), [1]),
      node(1, "body", True, (0, 0, 1024, 360), [2, 18]),
      node(2, "div", True, (32, 32, 960, 296), [3]),
      node(3, "form", True, (32, 32, 960, 296), [4, 8, 12, 16, 17, 19]),
  ]
  boxes = []
  for k in range(3):
    boxes.append((64 + k * 240, 64, 208, 176))
  (b0, b1, b2) = boxes
  # Python: logo wrapped in a payload-free span.
  nodes += [
      node(4, "label", True, b0, [5, 6]),
      node(5, "#text", True, (b0[0] + 12, b0[1] + 130, 124, 32),
           text="Python"),
      node(6, "span", True, (b0[0] + 56, b0[1] + 16, 96, 96), [7]),
      node(7, "img", True, (b0[0] + 56, b0[1] + 16, 96, 96),
           img_src=buttons[0][1], img_alt="Python"),
  ]
  # C++: hidden tooltip under the label.
  nodes += [
      node(8, "label", True, b1, [9, 10, 11]),
      node(9, "#text", True, (b1[0] + 12, b1[1] + 130, 64, 32), text="C++"),
      node(10, "img", True, (b1[0] + 56, b1[1] + 16, 96, 96),
           img_src=buttons[1][1], img_alt="C++"),
      node(11, "div", False, (0, 0, 0, 0), text="Compiled, fast"),
  ]
  # Java: padded text and an empty visible spacer.
  nodes += [
      node(12, "label", True, b2, [13, 14, 15]),
      node(13, "#text", True, (b2[0] + 12, b2[1] + 130, 64, 32),
           text="  Java\n"),
      node(14, "img", True, (b2[0] + 56, b2[1] + 16, 96, 96),
           img_src=buttons[2][1], img_alt="Java"),
      node(15, "div", True, (b2[0], b2[1] + 170, 208, 4)),
  ]
  nodes += [
      node(16, "button", True, (64, 264, 160, 44), text="Submit"),
      node(17, "input", False, (0, 0, 0, 0)),
      node(18, "script", False, (0, 0, 0, 0), text="track();"),
      node(19, "#text", True, (32, 320, 8, 8), text=" \n  "),
  ]

  def draw(d):
    colors = [(55, 118, 171), (0, 89, 156), (231, 111, 0)]
    for (label, _), box, color in zip(buttons, boxes, colors):
      x, y, w, h = box
      d.rectangle([x, y, x + w - 1, y + h - 1], outline=(90, 90, 90), width=2)
      d.ellipse([x + 56, y + 16, x + 151, y + 111], fill=color)
      d.text((x + 16, y + 132), label, fill="black", font=font(22))
    d.rectangle([64, 264, 223, 307], fill=(30, 120, 220))
    d.text((100, 272), "Submit", fill="white", font=font(22))

  write_snapshot(root, "figure3", "file:///tests/data/html/figure3.html",
                 (1024, 360), nodes, draw)


WORDS = ("the of and to in is was for on that with as by at from his her "
         "river house garden window morning evening letter market station "
         "village mountain summer winter library teacher student museum "
         "bridge harbour forest island kitchen yellow silver quiet gentle "
         "walked opened carried noticed answered remembered travelled "
         "café naïve façade déjà vu Zürich São Paulo crème brûlée résumé "
         "piñata smörgåsbord Ångström coöperate Æsop œuvre").split()


def sentence(rng):
  n = rng.randint(6, 18)
  words = [rng.choice(WORDS) for _ in range(n)]
  words[0] = words[0][:1].upper() + words[0][1:]
  if rng.random() < 0.2:
    words.insert(rng.randint(1, n - 1), str(rng.randint(2, 2999)))
  return " ".join(words) + rng.choice([".", ".", ".", "?", "!", ";"])


def warmup_text(path, rng, target_bytes=160_000):
  out, size = [], 0
  while size < target_bytes:
    para = " ".join(sentence(rng) for _ in range(rng.randint(2, 6)))
    out.append(para)
    size += len(para.encode("utf-8")) + 2
  with open(path, "w", encoding="utf-8") as f:
    f.write("\n\n".join(out) + "\n")


def tasks(root, rng):
  img_dir = os.path.join(root, "images")
  os.makedirs(img_dir, exist_ok=True)
  # A diagram, a document page and a small app screen.
  diagram = Image.new("RGB", (320, 240), "white")
  d = ImageDraw.Draw(diagram)
  d.ellipse([20, 20, 120, 120], outline="black", width=3)
  d.rectangle([180, 40, 300, 200], outline="black", width=3)
  d.line([120, 70, 180, 120], fill="black", width=2)
  diagram.save(os.path.join(img_dir, "diagram.png"))
  doc = Image.new("RGB", (400, 520), "white")
  d = ImageDraw.Draw(doc)
  for i in range(18):
    d.text((24, 24 + i * 26), sentence(rng)[:48], fill="black", font=font(14))
  doc.save(os.path.join(img_dir, "document.png"))
  app = Image.new("RGB", (360, 640), (245, 245, 245))
  d = ImageDraw.Draw(app)
  rows = []
  for i in range(7):
    box = [16, 24 + i * 84, 328, 68]
    rows.append(box)
    d.rectangle([box[0], box[1], box[0] + box[2] - 1, box[1] + box[3] - 1],
                fill="white", outline=(200, 200, 200))
    d.text((32, box[1] + 22), "Item %d" % (i + 1), fill="black", font=font(18))
  app.save(os.path.join(img_dir, "app.png"))

  items = [
      {"task": "caption", "id": "cap-0", "image": "images/document.png",
       "caption": "A page of typed text with <18> lines & no images."},
      {"task": "caption", "id": "cap-1", "image": "images/diagram.png",
       "caption": "A circle connected to a rectangle."},
      {"task": "vqa", "id": "ai2d-0", "image": "images/diagram.png",
       "question": "Which shape is connected to the circle?",
       "choices": ["triangle", "rectangle", "star", "hexagon"],
       "answer": "rectangle"},
      {"task": "vqa", "id": "docvqa-0", "image": "images/document.png",
       "question": "How many lines of text are on the page?",
       "answer": "18"},
      {"task": "widget", "id": "widget-0", "image": "images/app.png",
       "bbox": rows[2], "caption": "open item 3"},
      {"task": "widget", "id": "widget-1", "image": "images/app.png",
       "bbox": [300, 600, 120, 80], "caption": "partly off screen"},
      {"task": "refexp", "id": "refexp-0", "image": "images/app.png",
       "expression": "the fourth item in the list", "candidates": rows,
       "positive_index": 3},
      {"task": "refexp", "id": "refexp-1", "image": "images/app.png",
       "expression": "the first item", "candidates": rows[:1],
       "positive_index": 0},
      {"task": "refexp", "id": "refexp-2", "image": "images/app.png",
       "expression": "the last of three", "candidates": rows[:3],
       "positive_index": 2},
  ]
  with open(os.path.join(root, "tasks.jsonl"), "w") as f:
    for item in items:
      f.write(json.dumps(item, ensure_ascii=False) + "\n")


def main():
  p = argparse.ArgumentParser(description=__doc__)
  p.add_argument("--out", default=os.path.join(
      os.path.dirname(__file__), "..", "tests", "data"))
  args = p.parse_args()
  rng = random.Random(20260101)
  figure3(os.path.join(args.out, "snapshots"))
  warmup_text(os.path.join(args.out, "warmup_corpus.txt"), rng)
  tasks(os.path.join(args.out, "tasks"), rng)


if __name__ == "__main__":
  main()
