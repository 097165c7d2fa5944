from rest_framework import serializers


class StoreRecordSerializer(serializers.Serializer):
    object_id = serializers.CharField(read_only=True)
    message_id = serializers.CharField(read_only=True)
    index = serializers.IntegerField(read_only=True)
    size = serializers.IntegerField(read_only=True)
    uploaded_at = serializers.DateTimeField(read_only=True)
