# THIS FILE IS GENERATED BY ATOMTWIN SETUP.PY
from atomtwin.versions import Version

version = Version(*(0, 1, 0))
