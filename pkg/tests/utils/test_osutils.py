# -*- coding: utf-8 -*-
# pylint: disable=missing-docstring,redefined-outer-name

import os
import os.path as pth
from sopcast.utils import osutils

def test_ensure_directory(tmpdir):
    """Test ensure_directory"""
    outdir = tmpdir.mkdir("sopcast_out")
    cname = str(outdir)
    newdir = osutils.ensure_directory(pth.join(cname, "reports"))
    assert pth.exists(newdir)
    assert osutils.ensure_directory(newdir) == newdir

def test_backup_file(tmpdir):
    src = tmpdir.join("sopcast.yaml")
    src.write("dummy")
    dest = osutils.backup_file(str(src), time_format="%Y")
    tstamp = osutils.timestamp("%Y")
    assert dest == str(tmpdir.join("sopcast_" + tstamp + ".yaml"))

def test_abspath(monkeypatch, tmpdir):
    monkeypatch.setenv("SOPCAST_TEST_DIR", str(tmpdir))
    assert osutils.abspath("$SOPCAST_TEST_DIR/a/../b") == \
        pth.normpath(pth.join(str(tmpdir), "b"))
    assert osutils.path_exists("$SOPCAST_TEST_DIR")
    assert not osutils.path_exists("$SOPCAST_TEST_DIR/missing")

def test_ostype():
    expected = "windows" if os.name == "nt" else os.uname()[0].lower()
    assert osutils.ostype() == expected
