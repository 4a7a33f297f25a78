#!/usr/bin/env python3
# Copyright 2026 The opbench Authors. All Rights Reserved.
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
# ==============================================================================
"""Regenerates the bundled files under fixtures/.

Usage: python3 tools/fixtures_gen.py [OUT_DIR]

Trace fixtures are reconstructions: event durations are authored so that the
group shares equal published percentages. They are not measurements.
"""

import argparse
import json
import os
import random

F32 = "f32"
I64 = "i64"


def spec(dims, dtype=F32):
  return {"dims": list(dims), "dtype": dtype}


def write(path, doc):
  with open(path, "w") as f:
    json.dump(doc, f, indent=1, sort_keys=True)
    f.write("\n")


class GraphBuilder:

  def __init__(self, model_name, batch_size):
    self.meta = {"model_name": model_name, "batch_size": batch_size}
    self.inputs = []
    self.nodes = []
    self.shapes = {}

  def input(self, vid, dims):
    self.inputs.append({"id": vid, "spec": spec(dims)})
    self.shapes[vid] = (list(dims), F32)
    return vid

  def node(self, nid, op, inputs, outs, attrs=None, out_dtype=F32):
    in_specs = [spec(*self.shapes[v]) for v in inputs]
    self.nodes.append({
        "id": nid,
        "op_name": op,
        "attrs": attrs or {},
        "inputs": list(inputs),
        "input_specs": in_specs,
        "output_specs": [spec(d, out_dtype) for d in outs],
    })
    for k, d in enumerate(outs):
      self.shapes[nid if k == 0 else "%s:%d" % (nid, k)] = (list(d), out_dtype)
      if k == 0:
        self.shapes["%s:0" % nid] = (list(d), out_dtype)
    return nid

  def doc(self, outputs):
    return {
        "version": "opbench-graph/1",
        "metadata": self.meta,
        "graph_inputs": self.inputs,
        "nodes": self.nodes,
        "graph_outputs": list(outputs),
    }


def toy_vit():
  # 32x32 image, 8x8 patches, width 64, single-head attention, one block.
  g = GraphBuilder("toy_vit", 1)
  g.input("pixels", [1, 3, 32, 32])
  g.node("patch_reshape", "reshape", ["pixels"], [[1, 3, 4, 8, 4, 8]],
         {"shape": [1, 3, 4, 8, 4, 8]})
  g.node("patch_permute", "permute", ["patch_reshape"], [[1, 4, 4, 3, 8, 8]],
         {"dims": [0, 2, 4, 1, 3, 5]})
  g.node("patch_contiguous", "contiguous", ["patch_permute"],
         [[1, 4, 4, 3, 8, 8]])
  g.node("patch_view", "view", ["patch_contiguous"], [[1, 16, 192]],
         {"shape": [1, 16, 192]})
  g.node("patch_embed", "linear", ["patch_view"], [[1, 16, 64]],
         {"in_features": 192, "out_features": 64, "bias": True})
  g.node("ln1", "layer_norm", ["patch_embed"], [[1, 16, 64]], {"eps": 1e-6})
  g.node("qkv", "linear", ["ln1"], [[1, 16, 192]],
         {"in_features": 64, "out_features": 192, "bias": True})
  g.node("qkv_split", "split", ["qkv"], [[1, 16, 64]] * 3,
         {"split_size": 64, "dim": 2})
  g.node("k_t", "permute", ["qkv_split:1"], [[1, 64, 16]], {"dims": [0, 2, 1]})
  g.node("scores", "matmul", ["qkv_split", "k_t"], [[1, 16, 16]])
  g.node("scale", "true_divide", ["scores"], [[1, 16, 16]], {"other": 8.0})
  g.node("attn", "softmax", ["scale"], [[1, 16, 16]], {"dim": -1})
  g.node("context", "matmul", ["attn", "qkv_split:2"], [[1, 16, 64]])
  g.node("proj", "linear", ["context"], [[1, 16, 64]],
         {"in_features": 64, "out_features": 64, "bias": True})
  g.node("residual1", "add", ["proj", "patch_embed"], [[1, 16, 64]])
  g.node("ln2", "layer_norm", ["residual1"], [[1, 16, 64]], {"eps": 1e-6})
  g.node("fc1", "linear", ["ln2"], [[1, 16, 128]],
         {"in_features": 64, "out_features": 128, "bias": True})
  g.node("act", "gelu", ["fc1"], [[1, 16, 128]])
  g.node("fc2", "linear", ["act"], [[1, 16, 64]],
         {"in_features": 128, "out_features": 64, "bias": True})
  g.node("residual2", "add", ["fc2", "residual1"], [[1, 16, 64]])
  g.node("ln_final", "layer_norm", ["residual2"], [[1, 16, 64]], {"eps": 1e-6})
  g.node("token_split", "split", ["ln_final"], [[1, 1, 64], [1, 15, 64]],
         {"sections": [1, 15], "dim": 1})
  g.node("cls_token", "squeeze", ["token_split"], [[1, 64]], {"dim": 1})
  g.node("head", "linear", ["cls_token"], [[1, 10]],
         {"in_features": 64, "out_features": 10, "bias": True})
  assert len(g.nodes) == 24
  return g.doc(["head"])


def toy_detection():
  g = GraphBuilder("toy_detection", 1)
  g.input("image", [1, 3, 32, 32])
  g.node("stem", "conv2d", ["image"], [[1, 8, 32, 32]],
         {"out_channels": 8, "kernel_size": [3, 3], "stride": 1, "padding": 1,
          "bias": True})
  g.node("stem_bn", "FrozenBatchNorm2d", ["stem"], [[1, 8, 32, 32]],
         {"eps": 1e-5})
  g.node("stem_relu", "relu", ["stem_bn"], [[1, 8, 32, 32]])
  g.node("downsample", "interpolate", ["stem_relu"], [[1, 8, 16, 16]],
         {"size": [16, 16], "mode": "bilinear"})
  g.node("box_head", "conv2d", ["downsample"], [[1, 5, 16, 16]],
         {"out_channels": 5, "kernel_size": [1, 1], "stride": 1, "padding": 0,
          "bias": True})
  g.node("head_permute", "permute", ["box_head"], [[1, 16, 16, 5]],
         {"dims": [0, 2, 3, 1]})
  g.node("anchors", "reshape", ["head_permute"], [[256, 5]],
         {"shape": [256, 5]})
  g.node("box_split", "split", ["anchors"], [[256, 4], [256, 1]],
         {"sections": [4, 1], "dim": 1})
  g.node("objectness", "squeeze", ["box_split:1"], [[256]], {"dim": 1})
  # The nms output spec is a capacity: at most 256 indices survive.
  g.node("keep", "nms", ["box_split", "objectness"], [[256]],
         {"iou_threshold": 0.5, "score_threshold": 0.0}, out_dtype=I64)
  return g.doc(["keep", "downsample"])


# One row per recorded operator shape: (operator, model, implementation, shape, attrs).
NONGEMM_SHAPES = [
    ("ReLu", "Activation", "DETR", "Torch.nn.modules.activation", [2, 64, 533], {}),
    ("GELU", "Activation", "ViT-l16", "Torch.nn.modules.activation", [1, 97, 4096], {}),
    ("GELU", "Activation", "GPT2-XL", "transformers.activations.GELUActivation", [1, 8, 6400], {}),
    ("SiLu", "Activation", "Llama-2", "Torch.nn", [1, 10, 11008], {}),
    ("LayerNorm", "Normalization", "Segformer", "Torch.nn.modules.normalization", [2, 16384, 32], {}),
    ("BatchNorm2d", "Normalization", "Segformer", "Torch.nn.modules.batchnorm", [2, 256, 128, 128], {}),
    ("LlamaRMSNorm", "Normalization", "Llama-2", "transformers.models.llama", [1, 10, 4096], {}),
    ("FrozenBatchNorm2d", "Normalization", "MaskRCNN", "torchvision.ops.misc", [1, 1024, 50, 68], {}),
    ("FrozenBatchNorm2d", "Normalization", "DETR", "transformers.models.detr", [2, 850, 256], {}),
    ("LayerNorm", "Normalization", "DETR", "Torch.nn.modules.normalization", [2, 850, 256], {}),
    ("Add", "ElemwiseArithmetic", "Segformer", "Torch.add", [2, 16384, 32], {}),
    ("Mul", "ElemwiseArithmetic", "Llama-2", "Torch.mul", [1, 10, 11008], {}),
    ("Neg", "ElemwiseArithmetic", "Llama-2", "Torch.neg", [1, 32, 10, 64], {}),
    ("TrueDiv", "ElemwiseArithmetic", "Segformer", "Torch.true_divide", [2, 1, 16384, 256], {}),
    ("TrueDiv", "ElemwiseArithmetic", "GPT2-XL", "Torch.true_divide", [1, 25, 8, 8], {}),
    ("Contiguous", "Memory", "Segformer", "Torch.Tensor.contiguous", [2, 32, 128, 128], {}),
    ("Contiguous", "Memory", "Llama-2", "Torch.Tensor", [1, 10, 32, 128], {}),
    ("Permute", "Memory", "ViT-b16", "Torch.permute", [1, 768, 196], {"dims": [0, 2, 1]}),
    ("Permute", "Memory", "GPT2-XL", "Torch.permute", [1, 8, 25, 64], {"dims": [0, 2, 1, 3]}),
    ("Split", "Memory", "GPT2-XL", "Torch.split", [1, 8, 4800], {"split_size": 1600, "dim": 2}),
    ("View", "Memory", "GPT2-XL", "Torch.Tensor.view", [1, 8, 1600], {"shape": [1, 8, 25, 64]}),
    ("Reshape", "Memory", "ViT-b16", "Torch.reshape", [1, 768, 14, 14], {"shape": [1, 768, 196]}),
    ("Expand", "Memory", "ViT-b16", "Torch.Tensor.expand", [1, 1, 768], {"shape": [1, -1, -1]}),
    ("Squeeze", "Memory", "Llama-2", "Torch.squeeze", [1, 1, 10, 128], {"dim": 1}),
    ("Softmax", "LogitComputation", "DETR", "Torch.nn.Functional.softmax", [1, 25, 8, 8], {"dim": -1}),
    ("Softmax", "LogitComputation", "Segformer", "Torch.nn.Functional.softmax", [2, 1, 16384, 256], {"dim": -1}),
    ("NMS", "RoiSelection", "MaskRCNN", "torchvision.ops.nms", [4663, 4], {"iou_threshold": 0.5}),
    ("Interpolate", "Interpolation", "Segformer", "Torch.nn.Functional", [2, 256, 128, 128],
     {"size": [128, 128], "mode": "bilinear"}),
]


def shape_records():
  records = []
  for op, group, model, impl, shape, attrs in NONGEMM_SHAPES:
    records.append({
        "op_name": op,
        "group": group,
        "input_shapes": [shape],
        "attrs": attrs,
        "source_model": model,
        "count": 1,
        "implementation": impl,
    })
  return {"version": "opbench-records/1", "records": records}


def subset_suite():
  # A small runnable subset for quick CLI checks; seeds are fixed here.
  keep = [("GELU", [1, 8, 6400]), ("Softmax", [1, 25, 8, 8]),
          ("NMS", [4663, 4]), ("Permute", [1, 8, 25, 64])]
  specs = []
  for op, group, model, _, shape, attrs in NONGEMM_SHAPES:
    if (op, shape) in keep:
      specs.append({"op_name": op, "group": group, "input_shapes": [shape],
                    "attrs": attrs, "source_model": model,
                    "seed": 1000 + len(specs)})
  return {"version": "opbench-ubench/1", "specs": specs}


# Building blocks for authored traces: group -> [(op_name, shape)].
TRACE_OPS = {
    "gpt2": {
        "GEMM": [("linear", [1, 8, 1600]), ("matmul", [1, 25, 8, 64])],
        "Activation": [("GELU", [1, 8, 6400])],
        "Memory": [("Split", [1, 8, 4800]), ("View", [1, 8, 1600]),
                   ("Permute", [1, 8, 25, 64])],
        "ElemwiseArithmetic": [("Add", [1, 8, 1600]), ("TrueDiv", [1, 25, 8, 8])],
        "Normalization": [("LayerNorm", [1, 8, 1600])],
        "LogitComputation": [("Softmax", [1, 25, 8, 8])],
    },
    "fasterrcnn": {
        "GEMM": [("conv2d", [1, 1024, 50, 68]), ("linear", [1000, 12544])],
        "Normalization": [("FrozenBatchNorm2d", [1, 1024, 50, 68])],
        "Activation": [("relu", [1, 1024, 50, 68])],
        "Memory": [("reshape", [1000, 256, 7, 7]), ("cat", [4663, 4])],
        "RoiSelection": [("NMS", [4663, 4])],
        "ElemwiseArithmetic": [("add", [1, 256, 100, 136])],
        "Interpolation": [("interpolate", [1, 256, 50, 68])],
    },
}


def authored_trace(model_name, family, budget_us, note, expected, rng,
                   events_per_group=4, device="device_external"):
  """Splits each group's budget across a few events with uneven durations."""
  samples = []
  ops = TRACE_OPS[family]
  for group, total in budget_us.items():
    if total == 0:
      continue
    weights = [rng.randint(1, 9) for _ in range(events_per_group)]
    parts = [total * w // sum(weights) for w in weights]
    # Remainder on the last event keeps the group sum at exactly `total`.
    parts[-1] = total - sum(parts[:-1])
    for k, t in enumerate(parts):
      op, shape = ops[group][k % len(ops[group])]
      samples.append({
          "node_id": "%s_%s_%d" % (family, op.lower(), len(samples)),
          "op_name": op,
          "group": group,
          "device": device,
          "wall_time_us": float(t),
          "flops": 0,
          "input_shapes": [shape],
      })
  rng.shuffle(samples)
  total = sum(s["wall_time_us"] for s in samples)
  return {
      "version": "opbench-trace/1",
      "model_name": model_name,
      "batch_size": 1,
      "repeats": 1,
      "clock_resolution_ns": 1,
      "total_wall_time_us": float(total),
      "note": note,
      "expected": expected,
      "samples": samples,
  }


RECON = ("Reconstruction: durations are authored so group shares equal the "
         "published figures. Not a measurement.")


def chrome_trace(rng):
  """50 complete events on two threads, nested up to three levels deep."""
  events = [{"ph": "M", "name": "process_name", "pid": 1, "tid": 0,
             "args": {"name": "python"}}]
  ops = [("aten::linear", "cpu_op", [[1, 8, 1600], [6400, 1600], [6400]]),
         ("aten::gelu", "cpu_op", [[1, 8, 6400]]),
         ("aten::softmax", "cpu_op", [[1, 25, 8, 8], []]),
         ("aten::add", "cpu_op", [[1, 8, 1600], [1, 8, 1600]]),
         ("aten::layer_norm", "cpu_op", [[1, 8, 1600], [], [1600], [1600]])]
  count = 0
  for tid in (1, 2):
    ts = 1000.0
    per_thread = 0
    while per_thread < 25:
      name, cat, dims = ops[rng.randrange(len(ops))]
      root_dur = float(rng.randint(40, 90))
      root = {"ph": "X", "name": name, "cat": cat, "pid": 1, "tid": tid,
              "ts": ts, "dur": root_dur,
              "args": {"Input Dims": dims, "node_id": "t%d_n%d" % (tid, count)}}
      events.append(root)
      per_thread += 1
      count += 1
      # One or two children, each maybe holding a grandchild.
      cts = ts + 2.0
      for _ in range(rng.randint(1, 2)):
        if per_thread >= 25:
          break
        cdur = float(rng.randint(8, 15))
        events.append({"ph": "X", "name": name + "_impl", "cat": "kernel",
                       "pid": 1, "tid": tid, "ts": cts, "dur": cdur})
        per_thread += 1
        count += 1
        if per_thread < 25 and rng.random() < 0.6:
          events.append({"ph": "X", "name": "vectorized_loop", "cat": "kernel",
                         "pid": 1, "tid": tid, "ts": cts + 1.0,
                         "dur": cdur - 3.0})
          per_thread += 1
          count += 1
        cts += cdur + 2.0
      ts += root_dur + float(rng.randint(1, 5))
  assert count == 50
  rng.shuffle(events)
  return {"traceEvents": events, "displayTimeUnit": "ms"}


def sample_rules():
  return [
      {"pattern": "hardswish", "group": "Activation"},
      {"pattern": "roi_align*", "group": "RoiSelection"},
      {"pattern": "*embedding*", "group": "Memory"},
  ]


def main(out_dir):
  os.makedirs(out_dir, exist_ok=True)
  rng = random.Random(20260415)
  write(os.path.join(out_dir, "toy_vit.graph.json"), toy_vit())
  write(os.path.join(out_dir, "toy_detection.graph.json"), toy_detection())
  write(os.path.join(out_dir, "nongemm_shapes.records.json"), shape_records())
  write(os.path.join(out_dir, "nongemm_subset.ubench.json"), subset_suite())
  write(os.path.join(out_dir, "sample.rules.json"), sample_rules())

  # GPT2, single batch: non-GEMM 77%, Activation the largest at 23%.
  write(os.path.join(out_dir, "gpt2_sample.trace.json"), authored_trace(
      "gpt2", "gpt2",
      {"GEMM": 230, "Activation": 230, "Memory": 200,
       "ElemwiseArithmetic": 180, "Normalization": 100,
       "LogitComputation": 60},
      RECON, {"gemm_pct": 23.0, "nongemm_pct": 77.0,
              "top_nongemm_group": "Activation", "top_nongemm_pct": 23.0,
              "pct_Uncategorized": 0.0}, rng))

  # FasterRCNN-style detection: non-GEMM 82%, Normalization the largest.
  write(os.path.join(out_dir, "fasterrcnn_sample.trace.json"), authored_trace(
      "fasterrcnn", "fasterrcnn",
      {"GEMM": 180, "Normalization": 605, "Activation": 80, "Memory": 70,
       "RoiSelection": 40, "ElemwiseArithmetic": 25},
      RECON, {"gemm_pct": 18.0, "nongemm_pct": 82.0,
              "top_nongemm_group": "Normalization",
              "top_nongemm_pct": 60.5}, rng))

  # The same workload on a CPU system (27% non-GEMM) and a GPU system (55%).
  write(os.path.join(out_dir, "pair_cpu.trace.json"), authored_trace(
      "gpt2-cpu", "gpt2",
      {"GEMM": 7300, "Activation": 800, "Memory": 700,
       "ElemwiseArithmetic": 600, "Normalization": 400,
       "LogitComputation": 200},
      RECON, {"nongemm_pct": 27.0, "gemm_pct": 73.0}, rng, device="host"))
  write(os.path.join(out_dir, "pair_gpu.trace.json"), authored_trace(
      "gpt2-gpu", "gpt2",
      {"GEMM": 450, "Activation": 160, "Memory": 150,
       "ElemwiseArithmetic": 120, "Normalization": 80,
       "LogitComputation": 40},
      RECON, {"nongemm_pct": 55.0, "gemm_pct": 45.0}, rng))

  write(os.path.join(out_dir, "nested_50.chrome.json"), chrome_trace(rng))


if __name__ == "__main__":
  parser = argparse.ArgumentParser(description="Regenerate the bundled fixtures.")
  parser.add_argument(
      "out_dir", nargs="?",
      default=os.path.join(os.path.dirname(os.path.abspath(__file__)), "..",
                           "fixtures"))
  main(parser.parse_args().out_dir)
