"""Exit criteria. Each test carries an ``acceptance`` marker; the run ends with
one PASS/FAIL line per criterion in the terminal summary."""

import itertools

import numpy as np
import pytest

import oracles
from kalgorithm.binarize import binarize, k_algorithm
from kalgorithm.cli import main
from kalgorithm.filters import FilterParams, k_filter, median_filter
from kalgorithm.image import BinaryImage, GrayImage, load_pgm, render_binary, save_pgm
from kalgorithm.metrics import binary_confusion, psnr
from kalgorithm.noise import NoiseSpec, add_salt_pepper
from kalgorithm.synth import synthetic_document

SEED = 20120417

# pinned from the first run: 128x128 synthetic page (layout seed 0), noise seed 1
GOLDEN_PSNR_NOISY = 16.31221165327114
GOLDEN_PSNR_KFILTER = 20.745408528945003
MIN_PSNR_GAIN_DB = 3.0


def random_image(rng, max_side=32):
    h, w = rng.integers(1, max_side + 1, size=2)
    return GrayImage(rng.integers(0, 256, size=(h, w)))


@pytest.mark.acceptance("AC1 buffered k_filter == per-pixel oracle on 1000 random images")
def test_ac1_oracle_equivalence():
    rng = np.random.default_rng(SEED)
    mismatches = 0
    for _ in range(1000):
        img = random_image(rng)
        rows = img.pixels.tolist()
        got = k_filter(img, FilterParams(2, 1)).pixels.tolist()
        want = oracles.k_filter_oracle(rows, 2, 1)
        mismatches += sum(a != b for ga, wa in zip(got, want) for a, b in zip(ga, wa))
    assert mismatches == 0


@pytest.mark.acceptance("AC2 k=0 is the identity on 100 random images")
def test_ac2_identity_gate():
    rng = np.random.default_rng(SEED + 1)
    for _ in range(100):
        img = random_image(rng)
        assert k_filter(img, FilterParams(2, 0)) == img


@pytest.mark.acceptance("AC3 20 separated pepper dots on 64x64 white are removed")
def test_ac3_isolation_removal():
    rng = np.random.default_rng(SEED + 2)
    pts = oracles.chebyshev_separated_points(rng, 64, 64, 20, 3)
    arr = np.full((64, 64), 255)
    for x, y in pts:
        arr[y, x] = 0
    out = k_filter(GrayImage(arr), FilterParams(2, 1), mode="buffered")
    assert out == GrayImage.filled(64, 64, 255)


def _all_strokes(size=16, margin=2):
    lo, hi = margin, size - 1 - margin
    for name, (dx, dy) in oracles.STROKE_DIRECTIONS.items():
        for length in range(2, 11):
            for x0, y0 in itertools.product(range(lo, hi + 1), repeat=2):
                pixels = oracles.straight_stroke(x0, y0, (dx, dy), length)
                if all(lo <= x <= hi and lo <= y <= hi for x, y in pixels):
                    yield name, length, pixels


@pytest.mark.acceptance("AC4 thin strokes: k_filter changes 0 pixels, median erases every stroke pixel")
def test_ac4_thin_stroke_differential():
    checked = 0
    for name, length, pixels in _all_strokes():
        arr = np.full((16, 16), 255)
        for x, y in pixels:
            arr[y, x] = 0
        img = GrayImage(arr)
        kf = k_filter(img, FilterParams(2, 1))
        med = median_filter(img, 2)
        assert int((kf.pixels != img.pixels).sum()) == 0, (name, length, pixels[0])
        erased = sum(int(med[x, y] == 255) for x, y in pixels)
        assert erased == length, (name, length, pixels[0])
        checked += 1
    assert checked > 0


@pytest.mark.acceptance("AC5 binarization laws: ties, affine invariance, render idempotence")
def test_ac5_binarization_laws():
    rng = np.random.default_rng(SEED + 3)
    # (a) constant images go entirely to white
    for value in range(256):
        assert binarize(GrayImage.filled(3, 2, value)).values() == [0] * 6
    # (b) 20 affine maps with in-range outputs
    for _ in range(20):
        img = GrayImage(rng.integers(0, 51, size=(12, 12)))
        a = int(rng.integers(1, 5))
        c = int(rng.integers(0, 255 - a * int(img.pixels.max()) + 1))
        mapped = GrayImage(a * img.pixels.astype(np.int64) + c)
        assert binarize(mapped) == binarize(img)
    # (c) 100 two-valued images
    done = 0
    while done < 100:
        bits = rng.integers(0, 2, size=tuple(rng.integers(1, 17, size=2)))
        if 0 < bits.sum() < bits.size:
            b = BinaryImage(bits)
            assert binarize(render_binary(b)) == b
            done += 1


@pytest.mark.acceptance("AC6 synthetic page: k_filter gains >= 3 dB PSNR; pipeline ink F1 >= plain binarize")
def test_ac6_end_to_end():
    clean = synthetic_document(128, 128, seed=0)
    truth = BinaryImage(clean.pixels == 0)
    noisy = add_salt_pepper(clean, NoiseSpec(0.05, 0.5, seed=1))
    filtered = k_filter(noisy)
    p_noisy, p_filtered = psnr(noisy, clean), psnr(filtered, clean)
    print(f"PSNR noisy {p_noisy:.4f} dB, k-filtered {p_filtered:.4f} dB")
    assert p_filtered - p_noisy >= MIN_PSNR_GAIN_DB
    assert p_noisy == pytest.approx(GOLDEN_PSNR_NOISY, abs=1e-9)
    assert p_filtered == pytest.approx(GOLDEN_PSNR_KFILTER, abs=1e-9)

    f1_pipeline = binary_confusion(k_algorithm(noisy), truth).f1
    f1_plain = binary_confusion(binarize(noisy), truth).f1
    print(f"ink F1 pipeline {f1_pipeline:.4f}, binarize only {f1_plain:.4f}")
    assert f1_pipeline >= f1_plain


@pytest.mark.acceptance("AC7 PGM round trip on 200 images (P2 and P5) and golden bytes")
def test_ac7_pgm_round_trip(golden_dir):
    rng = np.random.default_rng(SEED + 4)
    for _ in range(200):
        img = random_image(rng)
        for fmt in ("ascii", "binary"):
            assert load_pgm(save_pgm(img, fmt)) == img
    fixtures = [
        ("one_black_ascii.pgm", GrayImage.from_values(1, 1, [0]), "ascii"),
        ("quad_binary.pgm", GrayImage.from_values(2, 2, [0, 255, 128, 64]), "binary"),
        ("gradient_ascii.pgm", GrayImage.from_values(3, 2, [0, 128, 255, 64, 32, 16]), "ascii"),
    ]
    for name, img, fmt in fixtures:
        assert save_pgm(img, fmt) == (golden_dir / name).read_bytes()


def _gate_only_fires_harmlessly(img, params):
    rows = img.pixels.tolist()
    for y, x in itertools.product(range(img.height), range(img.width)):
        vals = sorted(oracles.window(rows, x, y, params.matrix_size))
        if vals.count(vals[0]) == params.k and vals[len(vals) // 2] != rows[y][x]:
            return False
    return True


@pytest.mark.acceptance("AC8 CLI determinism; paper-literal == buffered where replacements are no-ops")
def test_ac8_cli_determinism(tmp_path):
    clean = synthetic_document(48, 48, seed=3)
    noisy = add_salt_pepper(clean, NoiseSpec(0.05, 0.5, seed=9))
    src = tmp_path / "noisy.pgm"
    src.write_bytes(save_pgm(noisy))
    ref = tmp_path / "clean.pgm"
    ref.write_bytes(save_pgm(clean))
    truth = tmp_path / "truth.pgm"
    truth.write_bytes(save_pgm(render_binary(BinaryImage(clean.pixels == 0))))

    commands = {
        "denoise": ["denoise", str(src), "{out}", "--report", "{rep}", "--reference", str(ref)],
        "median": ["median", str(src), "{out}", "--report", "{rep}", "--reference", str(ref)],
        "binarize": ["binarize", str(src), "{out}", "--report", "{rep}", "--format", "csv"],
        "pipeline": ["pipeline", str(src), "{out}", "--report", "{rep}", "--reference",
                     str(ref), "--truth", str(truth)],
        "noise": ["noise", str(ref), "{out}", "--density", "0.1", "--seed", "42"],
        "evaluate": ["evaluate", str(ref), str(src), str(ref), "--truth", str(truth),
                     "--report", "{rep}", "--format", "json"],
    }
    for name, template in commands.items():
        produced = []
        out, rep = tmp_path / f"{name}.pgm", tmp_path / f"{name}.rep"
        argv = [a.format(out=out, rep=rep) for a in template]
        for _ in range(2):
            assert main(argv) == 0, name
            produced.append(tuple(p.read_bytes() if p.exists() else None for p in (out, rep)))
            for p in (out, rep):
                p.unlink(missing_ok=True)
        assert produced[0] == produced[1], name

    fixtures = [clean, GrayImage.filled(9, 9, 200)]
    dot = np.full((9, 9), 255)
    dot[4, 4] = 0
    stroke = np.full((9, 9), 255)
    stroke[4, 2:7] = 0
    fixtures += [GrayImage(dot), GrayImage(stroke)]
    # the dot fixture changes a pixel when the gate fires, so it does not qualify
    eligible = [img for img in fixtures if _gate_only_fires_harmlessly(img, FilterParams(2, 1))]
    assert len(eligible) == 3
    for i, img in enumerate(eligible):
        path = tmp_path / f"fx{i}.pgm"
        path.write_bytes(save_pgm(img))
        a, b = tmp_path / f"fx{i}_b.pgm", tmp_path / f"fx{i}_l.pgm"
        assert main(["denoise", str(path), str(a)]) == 0
        assert main(["denoise", str(path), str(b), "--mode", "paper-literal"]) == 0
        assert a.read_bytes() == b.read_bytes()
