"""Content-addressed on-disk cache for projective resolutions.

A resolution is keyed by the sha256 of the resolved module's canonical JSON,
so any two modules with identical content (including metadata) share an
entry.  Each entry is a directory holding one JSON file per layer, one .npz
per differential, the augmentation, and a manifest written last; every file
lands via an atomic rename, and a manifest is only trusted if its recorded
length and schema match.  Entries store the longest resolution computed so
far and serve shorter requests by truncation.
"""

import hashlib
import json
import os
import tempfile

import numpy as np
import scipy.sparse as sp

SCHEMA = "schurext-resolution-v1"
ENV_VAR = "SCHUREXT_CACHE_DIR"


def default_cache_dir():
    root = os.environ.get(ENV_VAR)
    if root:
        return root
    base = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(base, "schurext")


def _atomic_write_bytes(path, payload):
    d = os.path.dirname(path)
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _save_sparse(path, mat):
    import io

    buf = io.BytesIO()
    sp.save_npz(buf, sp.csr_matrix(mat))
    _atomic_write_bytes(path, buf.getvalue())


class ResolutionCache:
    def __init__(self, root=None):
        self.root = root or default_cache_dir()

    def key(self, module):
        return hashlib.sha256(
            (SCHEMA + "\n" + module.to_json()).encode()
        ).hexdigest()

    def entry_dir(self, module):
        k = self.key(module)
        return os.path.join(self.root, k[:2], k)

    def _manifest(self, d):
        try:
            with open(os.path.join(d, "manifest.json")) as fh:
                m = json.load(fh)
        except (OSError, ValueError):
            return None
        if m.get("schema") != SCHEMA:
            return None
        return m

    def load(self, module, length):
        """Stored Resolution truncated to `length`, or None on a miss."""
        from . import homalg

        d = self.entry_dir(module)
        m = self._manifest(d)
        if m is None or m["length"] < length:
            return None
        n = length + 1
        try:
            layers = []
            for i in range(n):
                with open(os.path.join(d, "layer_%02d.json" % i)) as fh:
                    spec = json.load(fh)
                layers.append(
                    homalg.ProjectiveLayer(
                        module.p,
                        module.ms,
                        [
                            homalg.Summand(
                                module.p,
                                module.ms,
                                [
                                    [tuple(f) for f in var]
                                    for var in s["parts"]
                                ],
                                s["aux"],
                            )
                            for s in spec["summands"]
                        ],
                    )
                )
            diffs = [
                sp.load_npz(os.path.join(d, "diff_%02d.npz" % i))
                for i in range(n - 1)
            ]
            aug = sp.load_npz(os.path.join(d, "aug.npz"))
        except OSError:
            return None
        return homalg.Resolution(module, layers, diffs, aug)

    def store(self, resolution):
        module = resolution.module
        d = self.entry_dir(module)
        m = self._manifest(d)
        length = len(resolution.layers) - 1
        if m is not None and m["length"] >= length:
            return
        for i, layer in enumerate(resolution.layers):
            spec = {
                "summands": [
                    {
                        "parts": [
                            [list(f) for f in var] for var in s.parts
                        ],
                        "aux": s.aux_offset,
                    }
                    for s in layer.summands
                ]
            }
            _atomic_write_bytes(
                os.path.join(d, "layer_%02d.json" % i),
                json.dumps(spec, sort_keys=True).encode(),
            )
        for i, diff in enumerate(resolution.diffs):
            _save_sparse(os.path.join(d, "diff_%02d.npz" % i), diff)
        _save_sparse(os.path.join(d, "aug.npz"), resolution.aug)
        manifest = {
            "schema": SCHEMA,
            "p": module.p,
            "ms": list(module.ms),
            "length": length,
            "dims": [layer.dim for layer in resolution.layers],
        }
        _atomic_write_bytes(
            os.path.join(d, "manifest.json"),
            json.dumps(manifest, sort_keys=True).encode(),
        )

    def clear(self):
        import shutil

        if os.path.isdir(self.root):
            shutil.rmtree(self.root)

    def stats(self):
        entries = 0
        nbytes = 0
        for dirpath, _dirnames, filenames in os.walk(self.root):
            for f in filenames:
                if f == "manifest.json":
                    entries += 1
                nbytes += os.path.getsize(os.path.join(dirpath, f))
        return {"root": self.root, "entries": entries, "bytes": nbytes}
