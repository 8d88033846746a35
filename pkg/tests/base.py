import os
import shutil

from kemmer.algebra import build_representation
from kemmer.fields import make_field, shipped_fields
from kemmer.operators import test_basis

_out_dir = "kemmer.test.out"

rep0 = build_representation(0)
rep1 = build_representation(1)
reps = [rep0, rep1]

fields = shipped_fields()
uniform_b = make_field("uniform-B", B=2)
null_wave = make_field("null-wave-poly", n=2)

# Degree 3 is the full window; degree 1 keeps the spin-1 sweeps quick
basis0 = test_basis(rep0.dim, 3)
basis1 = test_basis(rep1.dim, 1)


def basis_for(rep):
    return basis0 if rep.spin == 0 else basis1


def out_create():
    os.makedirs(_out_dir, exist_ok=True)


def out_clean():
    if os.path.exists(_out_dir):
        shutil.rmtree(_out_dir)


def out_path(name):
    return os.path.join(_out_dir, name)


def assertPasses(report):
    assert report.passed, report.to_dict()["failures"]
    assert report.checked


def assertFails(report):
    assert not report.passed
    assert report.failures
