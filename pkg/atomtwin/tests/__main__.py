# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

from atomtwin.tests import main


main()
