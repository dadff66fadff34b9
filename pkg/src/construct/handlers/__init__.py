"""Case handlers, one package per case tag"""

from pathlib import Path
import importlib
import logging

logger = logging.getLogger(__name__)


def load_handlers():
    """
    Dynamically load all handlers from subdirectories

    Returns:
        Dict of case tag -> handler class
    """
    handlers = {}
    handler_dir = Path(__file__).parent

    for item in sorted(handler_dir.iterdir()):
        if item.is_dir() and (item / 'handler.py').exists():
            module_name = item.name
            try:
                module = importlib.import_module(f'.{module_name}.handler', package=__name__)

                # Find the handler class (assumes it ends with 'Handler')
                for attr_name in dir(module):
                    if attr_name.endswith('Handler') and attr_name != 'BaseHandler':
                        handlers[module_name.upper()] = getattr(module, attr_name)
                        logger.debug(f"Loaded handler: {module_name} -> {attr_name}")
                        break

            except Exception as e:
                logger.error(f"Failed to load handler {module_name}: {str(e)}")

    return handlers


# Load all handlers at import time
HANDLERS = load_handlers()
