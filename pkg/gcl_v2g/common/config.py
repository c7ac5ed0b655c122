#    Copyright 2026 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.

import logging

from oslo_config import cfg

from gcl_v2g.common import constants
from gcl_v2g import version

GLOBAL_SERVICE_NAME = constants.GLOBAL_SERVICE_NAME

LOG = logging.getLogger(__name__)


def parse(args, default_config_files=None):
    cfg.CONF(
        args=args,
        project=GLOBAL_SERVICE_NAME,
        version="%s %s"
        % (
            GLOBAL_SERVICE_NAME.capitalize(),
            version.version_info,
        ),
        default_config_files=default_config_files or [],
    )
    # The CLI is usable without any configuration file.
    if not cfg.CONF.config_file:
        LOG.debug("No configuration file, using built-in defaults")
    return cfg.CONF.config_file
