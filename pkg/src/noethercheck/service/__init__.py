from .app import create_app, handle_all, handle_group, handle_situations, handle_verify

__all__ = ["create_app", "handle_all", "handle_group", "handle_situations", "handle_verify"]
