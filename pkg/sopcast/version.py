# -*- coding: utf-8 -*-

"""\
sopcast version
"""

import os
import subprocess
import shlex

_basic_version = "v0.4.0"

def git_describe():
    """Get version from git-describe, falling back to the release version"""
    dirname = os.path.dirname(__file__)
    git_ver = _basic_version
    try:
        cmd = shlex.split("git describe --tags --dirty")
        task = subprocess.Popen(cmd, cwd=dirname,
                                stdout=subprocess.PIPE,
                                stderr=subprocess.PIPE)
        out, _ = task.communicate()
        if task.poll() == 0 and out.strip():
            git_ver = out.strip().decode('ascii')
    except OSError:
        pass
    return git_ver

#: Version string
version = git_describe()
